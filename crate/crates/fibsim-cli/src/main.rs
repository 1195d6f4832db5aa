//! Command-line interface to the string-net simulator.

use clap::{Parser, Subcommand, ValueEnum};
use fibsim::anyon::FSymbolTable;
use fibsim::gates::{fmove_unitary, tail_swap_unitary, FMoveSpec, GateName};
use fibsim::lattice::{build_lattice, LatticeKind};
use fibsim::protocols::Experiment;
use fibsim::sim::{apply_op, sample_counts, CircuitOp, StateVector};
use fibsim::{CategoryData64, Complex, Experiment64, StateVector64};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "fibsim", version, about = "String-net circuit simulator for doubled Fibonacci anyons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in experiments.
    List,
    /// Run an experiment: verify all stages and sample measurement shots.
    Run {
        /// Experiment name (see `list`).
        #[arg(long)]
        experiment: String,
        /// Number of measurement shots.
        #[arg(long, default_value_t = 10_000)]
        shots: u64,
        /// Sampling seed (overridden by the FIBSIM_SEED environment variable).
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Verification tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report to a file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Dump an experiment's circuit and expected stage states as JSON.
    DumpCircuit {
        /// Experiment name (see `list`).
        #[arg(long)]
        experiment: String,
        /// Write to a file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Dump a lattice's combinatorial data.
    DumpLattice {
        /// Lattice kind (e.g. `theta`, `tetrahedron`, `tailed-theta`).
        #[arg(long)]
        lattice: String,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write to a file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Verify every experiment, sampling determinism, and dump replay.
    Selftest,
}

// ---------------------------------------------------------------------------
// Circuit dump format (version 1).
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct DumpOp {
    gate: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    variant: Option<String>,
    targets: Vec<usize>,
    controls: Vec<usize>,
    control_values: Vec<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    stage: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    legs: Option<Vec<usize>>,
    #[serde(default)]
    cancelled: bool,
}

#[derive(Serialize, Deserialize)]
struct DumpStage {
    stage: String,
    amplitudes: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct CircuitDump {
    version: u32,
    experiment: String,
    n_qubits: usize,
    ops: Vec<DumpOp>,
    expected_stages: Vec<DumpStage>,
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serializes")
}

fn json_usizes(v: &[usize]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(","))
}

/// Serialize a dump by hand so amplitudes are written with 17 significant
/// digits (exact f64 round trip).
fn write_dump(exp: &Experiment64) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{{\n  \"version\": 1,\n  \"experiment\": {},\n  \"n_qubits\": {},\n  \"ops\": [\n",
        json_str(&exp.name),
        exp.n_qubits
    ));
    let op_lines: Vec<String> = exp
        .circuit
        .ops
        .iter()
        .map(|op| {
            let mut fields = vec![format!("\"gate\": {}", json_str(&op.name))];
            if let Some(v) = &op.variant {
                fields.push(format!("\"variant\": {}", json_str(v)));
            }
            fields.push(format!("\"targets\": {}", json_usizes(&op.targets)));
            fields.push(format!("\"controls\": {}", json_usizes(&op.controls)));
            let vals: Vec<String> = op.control_values.iter().map(|v| v.to_string()).collect();
            fields.push(format!("\"control_values\": [{}]", vals.join(",")));
            if let Some(s) = &op.stage {
                fields.push(format!("\"stage\": {}", json_str(s)));
            }
            if let Some(legs) = &op.legs {
                fields.push(format!("\"legs\": {}", json_usizes(legs)));
            }
            if op.cancelled {
                fields.push("\"cancelled\": true".to_string());
            }
            format!("    {{{}}}", fields.join(", "))
        })
        .collect();
    out.push_str(&op_lines.join(",\n"));
    out.push_str("\n  ],\n  \"expected_stages\": [\n");
    let stage_lines: Vec<String> = exp
        .expected_stages
        .iter()
        .map(|(name, st)| {
            let amps: Vec<String> = st
                .amplitudes()
                .iter()
                .map(|a| format!("[{:.16e},{:.16e}]", a.re, a.im))
                .collect();
            format!(
                "    {{\"stage\": {}, \"amplitudes\": [{}]}}",
                json_str(name),
                amps.join(",")
            )
        })
        .collect();
    out.push_str(&stage_lines.join(",\n"));
    out.push_str("\n  ]\n}\n");
    out
}

/// Rebuild an executable op from a dumped one. Returns `None` for cancelled
/// ops (they are recorded but skipped).
fn replay_op(op: &DumpOp) -> Result<Option<CircuitOp<f64>>, String> {
    if op.cancelled {
        return Ok(None);
    }
    let gate = if op.gate == "fmove" {
        if op.variant.as_deref() == Some("tail-swap-four-input") {
            tail_swap_unitary(&CategoryData64::standard())
        } else {
            let legs = op
                .legs
                .as_ref()
                .ok_or_else(|| "fmove op without legs".to_string())?;
            if legs.len() != 4 {
                return Err("fmove op with malformed legs".to_string());
            }
            let internal = *op
                .targets
                .last()
                .ok_or_else(|| "fmove op without targets".to_string())?;
            let spec = FMoveSpec::new([legs[0], legs[1], legs[2], legs[3]], internal)
                .map_err(|e| e.to_string())?;
            fmove_unitary(&spec, &FSymbolTable::standard())
        }
    } else {
        let name = GateName::parse(&op.gate).ok_or_else(|| format!("unknown gate {}", op.gate))?;
        let g = fibsim::gates::named_gate::<f64>(name);
        match op.variant.as_deref() {
            Some("conjugate") => g.conjugate(),
            Some("adjoint") => g.adjoint(),
            _ => g,
        }
    };
    let mut rebuilt = CircuitOp::new(&op.gate, gate, op.targets.clone())
        .with_controls(op.controls.clone(), op.control_values.clone());
    rebuilt.legs = op.legs.clone();
    Ok(Some(rebuilt))
}

/// Execute a parsed dump from `|0...0>`, checking expected stages on the way.
fn replay_dump(dump: &CircuitDump, tolerance: f64) -> Result<StateVector64, String> {
    let mut st = StateVector::new(dump.n_qubits, 0).map_err(|e| e.to_string())?;
    let expected: BTreeMap<&str, &DumpStage> = dump
        .expected_stages
        .iter()
        .map(|s| (s.stage.as_str(), s))
        .collect();
    let mut current: Option<String> = None;
    let check_stage = |name: &str, st: &StateVector64| -> Result<(), String> {
        if let Some(stage) = expected.get(name) {
            let amps: Vec<Complex<f64>> = stage
                .amplitudes
                .iter()
                .map(|&[re, im]| Complex::new(re, im))
                .collect();
            let want =
                StateVector::from_amplitudes(dump.n_qubits, amps).map_err(|e| e.to_string())?;
            let fid = want.fidelity(st).map_err(|e| e.to_string())?;
            if fid < 1.0 - tolerance {
                return Err(format!("replayed stage {name} fidelity {fid}"));
            }
        }
        Ok(())
    };
    for op in &dump.ops {
        if op.stage != current {
            if let Some(name) = current.take() {
                check_stage(&name, &st)?;
            }
            current = op.stage.clone();
        }
        if let Some(exec) = replay_op(op)? {
            st = apply_op(&st, &exec).map_err(|e| e.to_string())?;
        }
    }
    if let Some(name) = current {
        check_stage(&name, &st)?;
    }
    Ok(st)
}

// ---------------------------------------------------------------------------
// Commands.
// ---------------------------------------------------------------------------

fn effective_seed(cli_seed: u64) -> u64 {
    std::env::var("FIBSIM_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(cli_seed)
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| e.to_string()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_list() -> Result<bool, String> {
    for name in Experiment::<f64>::all_names() {
        println!("{name}");
    }
    Ok(true)
}

fn cmd_run(
    experiment: &str,
    shots: u64,
    seed: u64,
    tolerance: f64,
    format: Format,
    output: &Option<PathBuf>,
) -> Result<bool, String> {
    let exp = Experiment64::by_name(experiment).map_err(|e| e.to_string())?;
    let report = exp.verify(tolerance).map_err(|e| e.to_string())?;
    let final_state = exp.run().map_err(|e| e.to_string())?;
    let seed = effective_seed(seed);
    let counts =
        sample_counts(&final_state, &exp.sample_qubits, shots, seed).map_err(|e| e.to_string())?;
    let text = match format {
        Format::Text => {
            let mut t = format!(
                "experiment: {}\nverification: {}\n",
                report.name,
                if report.passed { "PASS" } else { "FAIL" }
            );
            for (stage, fid) in &report.stage_fidelities {
                t.push_str(&format!("stage {stage}: fidelity {fid:.12}\n"));
            }
            for c in &report.checks {
                t.push_str(&format!(
                    "check {}: value {:.12} expected {:.12} [{}]\n",
                    c.name,
                    c.value,
                    c.expected,
                    if c.passed { "ok" } else { "FAIL" }
                ));
            }
            t.push_str(&format!(
                "counts (qubits {:?}, shots {shots}, seed {seed}):\n",
                exp.sample_qubits
            ));
            for (k, v) in &counts {
                t.push_str(&format!("  {k} {v}\n"));
            }
            t
        }
        Format::Json => {
            let stages: Vec<serde_json::Value> = report
                .stage_fidelities
                .iter()
                .map(|(s, f)| serde_json::json!({"stage": s, "fidelity": f}))
                .collect();
            let checks: Vec<serde_json::Value> = report
                .checks
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "name": c.name, "value": c.value, "expected": c.expected,
                        "tolerance": c.tolerance, "passed": c.passed,
                    })
                })
                .collect();
            let v = serde_json::json!({
                "experiment": report.name,
                "passed": report.passed,
                "stages": stages,
                "checks": checks,
                "sample_qubits": exp.sample_qubits,
                "shots": shots,
                "seed": seed,
                "counts": counts,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).map_err(|e| e.to_string())?)
        }
    };
    emit(output, &text)?;
    Ok(report.passed)
}

fn cmd_dump_circuit(experiment: &str, output: &Option<PathBuf>) -> Result<bool, String> {
    let exp = Experiment64::by_name(experiment).map_err(|e| e.to_string())?;
    emit(output, &write_dump(&exp))?;
    Ok(true)
}

fn cmd_dump_lattice(kind: &str, format: Format, output: &Option<PathBuf>) -> Result<bool, String> {
    let kind = LatticeKind::parse(kind).ok_or_else(|| format!("unknown lattice: {kind}"))?;
    let lat = build_lattice(kind);
    let text = match format {
        Format::Text => {
            let mut t = format!(
                "lattice: {}\nqubits: {}\neuler characteristic: {}\n",
                kind.as_str(),
                lat.n_qubits(),
                lat.euler_characteristic()
            );
            t.push_str("edges (edge -> qubit):\n");
            for (e, q) in lat.edges() {
                t.push_str(&format!("  {e} -> q{q}\n"));
            }
            t.push_str("vertices:\n");
            for v in lat.vertices() {
                t.push_str(&format!("  {v:?}\n"));
            }
            t.push_str("plaquettes:\n");
            for p in lat.plaquettes() {
                t.push_str(&format!(
                    "  p{}: boundary {:?} tails {:?}\n",
                    p.id, p.boundary, p.tails
                ));
            }
            t
        }
        Format::Json => {
            let edges: Vec<serde_json::Value> = lat
                .edges()
                .iter()
                .map(|(e, q)| serde_json::json!({"edge": e, "qubit": q}))
                .collect();
            let vertices: Vec<Vec<(u32, u8)>> = lat.vertices();
            let plaquettes: Vec<serde_json::Value> = lat
                .plaquettes()
                .iter()
                .map(|p| serde_json::json!({"id": p.id, "boundary": p.boundary, "tails": p.tails}))
                .collect();
            let v = serde_json::json!({
                "lattice": kind.as_str(),
                "qubits": lat.n_qubits(),
                "euler_characteristic": lat.euler_characteristic(),
                "edges": edges,
                "vertices": vertices,
                "plaquettes": plaquettes,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).map_err(|e| e.to_string())?)
        }
    };
    emit(output, &text)?;
    Ok(true)
}

fn cmd_selftest() -> Result<bool, String> {
    let start = Instant::now();
    let mut ok = true;
    for name in Experiment::<f64>::all_names() {
        let exp = Experiment64::by_name(name).map_err(|e| e.to_string())?;
        let report = exp.verify(1e-9).map_err(|e| e.to_string())?;
        let passed = report.passed;
        ok &= passed;
        println!(
            "verify {name}: {}",
            if passed { "PASS" } else { "FAIL" }
        );

        // Deterministic sampling: identical seeds give identical histograms.
        let final_state = exp.run().map_err(|e| e.to_string())?;
        let c1 = sample_counts(&final_state, &exp.sample_qubits, 2000, 12345)
            .map_err(|e| e.to_string())?;
        let c2 = sample_counts(&final_state, &exp.sample_qubits, 2000, 12345)
            .map_err(|e| e.to_string())?;
        let det = format!("{c1:?}") == format!("{c2:?}");
        ok &= det;
        println!("sampling determinism {name}: {}", if det { "PASS" } else { "FAIL" });

        // Dump -> parse -> replay reproduces the final state.
        let dump_text = write_dump(&exp);
        let parsed: CircuitDump =
            serde_json::from_str(&dump_text).map_err(|e| e.to_string())?;
        let replay_ok = match replay_dump(&parsed, 1e-9) {
            Ok(replayed) => {
                let fid = replayed.fidelity(&final_state).map_err(|e| e.to_string())?;
                fid >= 1.0 - 1e-9
            }
            Err(e) => {
                println!("  replay error: {e}");
                false
            }
        };
        ok &= replay_ok;
        println!("dump replay {name}: {}", if replay_ok { "PASS" } else { "FAIL" });
    }
    println!(
        "selftest {} in {:.2}s",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::List => cmd_list(),
        Command::Run {
            experiment,
            shots,
            seed,
            tolerance,
            format,
            output,
        } => cmd_run(experiment, *shots, *seed, *tolerance, *format, output),
        Command::DumpCircuit { experiment, output } => cmd_dump_circuit(experiment, output),
        Command::DumpLattice {
            lattice,
            format,
            output,
        } => cmd_dump_lattice(lattice, *format, output),
        Command::Selftest => cmd_selftest(),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
