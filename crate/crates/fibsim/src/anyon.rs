//! Fibonacci fusion category data and doubled (string-net) charge labels.
//!
//! Conventions: the Fibonacci category has simple objects `1` and `tau` with
//! `tau x tau = 1 + tau`, quantum dimension `d_tau = phi` (the golden ratio)
//! and total quantum dimension `D = sqrt(1 + phi^2)`. The chiral R-symbols
//! are `R^{tau tau}_1 = e^{-4 pi i/5}` and `R^{tau tau}_tau = e^{+3 pi i/5}`,
//! giving the topological twist `theta_tau = e^{+4 pi i/5}`. The doubled
//! (achiral) theory has charges `x \bar{y}` for chiral labels `x`, `y`.

use crate::{real, Complex, Real};
use std::collections::BTreeMap;
use thiserror::Error;

/// Errors from category-level operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnyonError {
    /// A fusion channel was requested that the fusion rules do not allow.
    #[error("fusion channel is not admissible for the given pair")]
    InadmissibleChannel,
    /// A tau-taubar component was attached to a label that is not tau-taubar.
    #[error("component labels are only meaningful on the tau-taubar charge")]
    InvalidComponent,
}

/// Chiral Fibonacci label.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AnyonLabel {
    /// The vacuum label `1`.
    One,
    /// The nontrivial label `tau`.
    Tau,
}

impl AnyonLabel {
    /// Both labels, in order.
    pub const ALL: [AnyonLabel; 2] = [AnyonLabel::One, AnyonLabel::Tau];

    /// 0 for `1`, 1 for `tau` (the edge-qubit encoding).
    pub fn bit(self) -> usize {
        match self {
            AnyonLabel::One => 0,
            AnyonLabel::Tau => 1,
        }
    }

    /// Inverse of [`AnyonLabel::bit`].
    pub fn from_bit(b: usize) -> Self {
        if b == 0 {
            AnyonLabel::One
        } else {
            AnyonLabel::Tau
        }
    }

    /// Quantum dimension: 1 or `phi`.
    pub fn quantum_dimension<T: Real>(self) -> T {
        match self {
            AnyonLabel::One => T::one(),
            AnyonLabel::Tau => golden_ratio(),
        }
    }
}

/// The golden ratio `phi = (1 + sqrt 5)/2`.
pub fn golden_ratio<T: Real>() -> T {
    (T::one() + real::<T>(5.0).sqrt()) / real::<T>(2.0)
}

/// Total quantum dimension `D = sqrt(1 + phi^2)`.
pub fn total_quantum_dimension<T: Real>() -> T {
    let phi: T = golden_ratio();
    (T::one() + phi * phi).sqrt()
}

/// Fusion product of two chiral labels.
pub fn fuse(a: AnyonLabel, b: AnyonLabel) -> Vec<AnyonLabel> {
    use AnyonLabel::*;
    match (a, b) {
        (One, One) => vec![One],
        (One, Tau) | (Tau, One) => vec![Tau],
        (Tau, Tau) => vec![One, Tau],
    }
}

/// Whether `(a, b, c)` is an admissible fusion triple (equivalently, whether
/// a trivalent string-net vertex may carry these three edge labels).
pub fn admissible(a: AnyonLabel, b: AnyonLabel, c: AnyonLabel) -> bool {
    a.bit() + b.bit() + c.bit() != 1
}

/// Topological twist `theta_a`: 1 for the vacuum, `e^{+4 pi i/5}` for `tau`.
pub fn twist<T: Real>(a: AnyonLabel) -> Complex<T> {
    match a {
        AnyonLabel::One => Complex::new(T::one(), T::zero()),
        AnyonLabel::Tau => Complex::from_polar(T::one(), real::<T>(4.0) * T::PI() / real::<T>(5.0)),
    }
}

/// F-symbol `(F^{? }_{?})` in the index convention used throughout this
/// crate: `f_symbol(a, b, c, d, e, f)` recouples the internal label `e`
/// (admissible with `{a,b}` and `{c,d}`) into `f` (admissible with `{a,c}`
/// and `{b,d}`). Inadmissible index combinations give 0. For the all-`tau`
/// boundary the values are the entries of the F matrix
/// `[[1/phi, 1/sqrt(phi)], [1/sqrt(phi), -1/phi]]`; every other admissible
/// combination has a unique internal pair and value 1.
pub fn f_symbol<T: Real>(
    a: AnyonLabel,
    b: AnyonLabel,
    c: AnyonLabel,
    d: AnyonLabel,
    e: AnyonLabel,
    f: AnyonLabel,
) -> Complex<T> {
    let e_ok = admissible(a, b, e) && admissible(c, d, e);
    let f_ok = admissible(a, c, f) && admissible(b, d, f);
    if !(e_ok && f_ok) {
        return Complex::new(T::zero(), T::zero());
    }
    use AnyonLabel::Tau;
    if a == Tau && b == Tau && c == Tau && d == Tau {
        let phi: T = golden_ratio();
        let v = match (e, f) {
            (AnyonLabel::One, AnyonLabel::One) => T::one() / phi,
            (Tau, Tau) => -T::one() / phi,
            _ => T::one() / phi.sqrt(),
        };
        Complex::new(v, T::zero())
    } else {
        Complex::new(T::one(), T::zero())
    }
}

/// R-symbol `R^{ab}_m` (the phase for exchanging `a` and `b` in channel
/// `m`): `R^{tau tau}_1 = e^{-4 pi i/5}`, `R^{tau tau}_tau = e^{+3 pi i/5}`,
/// 1 when either label is the vacuum, 0 for inadmissible channels.
pub fn r_symbol<T: Real>(a: AnyonLabel, b: AnyonLabel, m: AnyonLabel) -> Complex<T> {
    if !admissible(a, b, m) {
        return Complex::new(T::zero(), T::zero());
    }
    use AnyonLabel::*;
    match (a, b, m) {
        (Tau, Tau, One) => Complex::from_polar(T::one(), real::<T>(-4.0) * T::PI() / real::<T>(5.0)),
        (Tau, Tau, Tau) => Complex::from_polar(T::one(), real::<T>(3.0) * T::PI() / real::<T>(5.0)),
        _ => Complex::new(T::one(), T::zero()),
    }
}

/// F-symbol table with optional entry overrides (overrides exist so that
/// consistency checks can be exercised against deliberately corrupted data).
#[derive(Clone, Debug, Default)]
pub struct FSymbolTable<T: Real> {
    overrides: BTreeMap<[AnyonLabel; 6], Complex<T>>,
}

impl<T: Real> FSymbolTable<T> {
    /// The standard (consistent) table.
    pub fn standard() -> Self {
        Self {
            overrides: BTreeMap::new(),
        }
    }

    /// Override a single entry.
    pub fn set(&mut self, key: [AnyonLabel; 6], value: Complex<T>) {
        self.overrides.insert(key, value);
    }

    /// Look up `f_symbol(a, b, c, d, e, f)` honouring overrides.
    pub fn get(
        &self,
        a: AnyonLabel,
        b: AnyonLabel,
        c: AnyonLabel,
        d: AnyonLabel,
        e: AnyonLabel,
        f: AnyonLabel,
    ) -> Complex<T> {
        if let Some(v) = self.overrides.get(&[a, b, c, d, e, f]) {
            *v
        } else {
            f_symbol(a, b, c, d, e, f)
        }
    }
}

/// R-symbol table with optional entry overrides.
#[derive(Clone, Debug, Default)]
pub struct RSymbolTable<T: Real> {
    overrides: BTreeMap<[AnyonLabel; 3], Complex<T>>,
}

impl<T: Real> RSymbolTable<T> {
    /// The standard (right-handed) table.
    pub fn standard() -> Self {
        Self {
            overrides: BTreeMap::new(),
        }
    }

    /// Override a single entry.
    pub fn set(&mut self, key: [AnyonLabel; 3], value: Complex<T>) {
        self.overrides.insert(key, value);
    }

    /// Look up `r_symbol(a, b, m)` honouring overrides.
    pub fn get(&self, a: AnyonLabel, b: AnyonLabel, m: AnyonLabel) -> Complex<T> {
        if let Some(v) = self.overrides.get(&[a, b, m]) {
            *v
        } else {
            r_symbol(a, b, m)
        }
    }
}

/// Largest pentagon-equation residual over all 2^9 index assignments.
///
/// The pentagon is evaluated in the standard orientation, where the F-symbol
/// `F^{abc}_d` with internal labels `(e, f)` is `table.get(b, a, c, d, e, f)`.
pub fn pentagon_residual<T: Real>(table: &FSymbolTable<T>) -> T {
    let fmat = |a, b, c, d, e, f| table.get(b, a, c, d, e, f);
    let mut worst = T::zero();
    for bits in 0..512usize {
        let l = |i: usize| AnyonLabel::from_bit((bits >> i) & 1);
        let (a, b, c, d, e) = (l(0), l(1), l(2), l(3), l(4));
        let (f, g, k, m) = (l(5), l(6), l(7), l(8));
        let lhs = fmat(f, c, d, e, g, m) * fmat(a, b, m, e, f, k);
        let mut rhs = Complex::new(T::zero(), T::zero());
        for h in AnyonLabel::ALL {
            rhs = rhs + fmat(a, b, c, g, f, h) * fmat(a, h, d, e, g, k) * fmat(b, c, d, k, h, m);
        }
        let r = (lhs - rhs).norm();
        if r > worst {
            worst = r;
        }
    }
    worst
}

/// Whether the pentagon equation holds for `table` to tolerance `tol`.
pub fn check_pentagon<T: Real>(table: &FSymbolTable<T>, tol: T) -> bool {
    pentagon_residual(table) < tol
}

/// Largest hexagon-equation residual over all 2^6 index assignments.
pub fn hexagon_residual<T: Real>(ftable: &FSymbolTable<T>, rtable: &RSymbolTable<T>) -> T {
    let fmat = |a, b, c, d, e, f| ftable.get(b, a, c, d, e, f);
    let mut worst = T::zero();
    for bits in 0..64usize {
        let l = |i: usize| AnyonLabel::from_bit((bits >> i) & 1);
        let (a, b, c, d, e, f) = (l(0), l(1), l(2), l(3), l(4), l(5));
        let lhs = rtable.get(c, a, e) * fmat(a, c, b, d, e, f) * rtable.get(c, b, f);
        let mut rhs = Complex::new(T::zero(), T::zero());
        for g in AnyonLabel::ALL {
            rhs = rhs + fmat(c, a, b, d, e, g) * rtable.get(c, g, d) * fmat(a, b, c, d, g, f);
        }
        let r = (lhs - rhs).norm();
        if r > worst {
            worst = r;
        }
    }
    worst
}

/// Whether the hexagon equation holds to tolerance `tol`.
pub fn check_hexagon<T: Real>(ftable: &FSymbolTable<T>, rtable: &RSymbolTable<T>, tol: T) -> bool {
    hexagon_residual(ftable, rtable) < tol
}

/// Ribbon identity check `R^{ab}_m R^{ba}_m = theta_m / (theta_a theta_b)`
/// for an admissible channel `m` of `a x b`.
///
/// Errors if `m` is not a fusion channel of `a x b`.
pub fn check_ribbon<T: Real>(
    a: AnyonLabel,
    b: AnyonLabel,
    m: AnyonLabel,
    tol: T,
) -> Result<bool, AnyonError> {
    if !fuse(a, b).contains(&m) {
        return Err(AnyonError::InadmissibleChannel);
    }
    let lhs = r_symbol::<T>(a, b, m) * r_symbol::<T>(b, a, m);
    let rhs = twist::<T>(m) / (twist::<T>(a) * twist::<T>(b));
    Ok((lhs - rhs).norm() < tol)
}

/// Charge label of the doubled theory: a chiral label for each handedness.
///
/// For the four-dimensional `tau taubar` charge, `component` optionally
/// records which internal basis state `(x, y)` is meant; `component` must be
/// `None` on every other charge.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DoubledLabel {
    /// Right-handed (chiral) part.
    pub right: AnyonLabel,
    /// Left-handed (antichiral) part.
    pub left: AnyonLabel,
    /// Internal component, only for `tau taubar`.
    pub component: Option<(AnyonLabel, AnyonLabel)>,
}

impl DoubledLabel {
    /// The vacuum charge `1 1bar`.
    pub const VACUUM: DoubledLabel = DoubledLabel {
        right: AnyonLabel::One,
        left: AnyonLabel::One,
        component: None,
    };

    /// Sector-level label (no component).
    pub fn new(right: AnyonLabel, left: AnyonLabel) -> Self {
        DoubledLabel {
            right,
            left,
            component: None,
        }
    }

    /// The `tau taubar` charge resolved to internal component `(x, y)`.
    pub fn tau_taubar_component(x: AnyonLabel, y: AnyonLabel) -> Self {
        DoubledLabel {
            right: AnyonLabel::Tau,
            left: AnyonLabel::Tau,
            component: Some((x, y)),
        }
    }

    /// The four charge sectors in a fixed order: `11`, `tau 1`, `1 taubar`,
    /// `tau taubar`.
    pub fn sectors() -> [DoubledLabel; 4] {
        use AnyonLabel::*;
        [
            DoubledLabel::new(One, One),
            DoubledLabel::new(Tau, One),
            DoubledLabel::new(One, Tau),
            DoubledLabel::new(Tau, Tau),
        ]
    }

    /// Whether the component annotation is structurally valid.
    pub fn is_valid(&self) -> bool {
        self.component.is_none()
            || (self.right == AnyonLabel::Tau && self.left == AnyonLabel::Tau)
    }

    /// Whether this is (any component of) the `tau taubar` charge.
    pub fn is_tau_taubar(&self) -> bool {
        self.right == AnyonLabel::Tau && self.left == AnyonLabel::Tau
    }

    /// Stable printable name (`"11"`, `"tau1"`, `"1taubar"`, `"tautaubar"`,
    /// with a `_xy` suffix for resolved components).
    pub fn sector_name(&self) -> String {
        use AnyonLabel::*;
        let base = match (self.right, self.left) {
            (One, One) => "11",
            (Tau, One) => "tau1",
            (One, Tau) => "1taubar",
            (Tau, Tau) => "tautaubar",
        };
        match self.component {
            None => base.to_string(),
            Some((x, y)) => {
                let s = |l| if l == Tau { "t" } else { "1" };
                format!("{}_{}{}", base, s(x), s(y))
            }
        }
    }
}

/// Fusion product in the doubled theory (componentwise on the chiral
/// factors). Results are sector-level labels.
pub fn doubled_fuse(a: DoubledLabel, b: DoubledLabel) -> Vec<DoubledLabel> {
    let mut out = Vec::new();
    for r in fuse(a.right, b.right) {
        for l in fuse(a.left, b.left) {
            out.push(DoubledLabel::new(r, l));
        }
    }
    out
}

/// Twist of a doubled charge: `theta_{x ybar} = theta_x / theta_y`.
pub fn doubled_twist<T: Real>(l: DoubledLabel) -> Complex<T> {
    twist::<T>(l.right) * twist::<T>(l.left).conj()
}

/// Bundled category constants and symbol tables.
#[derive(Clone, Debug)]
pub struct CategoryData<T: Real> {
    /// Golden ratio `phi` (quantum dimension of `tau`).
    pub phi: T,
    /// Total quantum dimension `D`.
    pub total_dim: T,
    /// Twist of `tau`, `e^{+4 pi i/5}`.
    pub theta_tau: Complex<T>,
    /// F-symbol table.
    pub f_table: FSymbolTable<T>,
    /// R-symbol table.
    pub r_table: RSymbolTable<T>,
}

impl<T: Real> CategoryData<T> {
    /// The standard doubled-Fibonacci data.
    pub fn standard() -> Self {
        CategoryData {
            phi: golden_ratio(),
            total_dim: total_quantum_dimension(),
            theta_tau: twist(AnyonLabel::Tau),
            f_table: FSymbolTable::standard(),
            r_table: RSymbolTable::standard(),
        }
    }
}

impl<T: Real> Default for CategoryData<T> {
    fn default() -> Self {
        Self::standard()
    }
}
