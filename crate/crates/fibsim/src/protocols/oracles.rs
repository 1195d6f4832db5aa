//! Frozen stage-state amplitudes: (basis index, re, im).
#![allow(clippy::approx_constant)]

pub const TETRA_PSI1: &[(usize, f64, f64)] = &[
    (0, 3.80422606518061479e-01, 0.00000000000000000e+00),
    (7, -2.35114100916989255e-01, 0.00000000000000000e+00),
    (25, -2.35114100916989255e-01, 0.00000000000000000e+00),
    (30, 8.98055953159170584e-02, 0.00000000000000000e+00),
    (31, 1.14234481878155145e-01, 0.00000000000000000e+00),
    (43, 6.15536707435050734e-01, 0.00000000000000000e+00),
    (44, -2.35114100916989255e-01, 0.00000000000000000e+00),
    (47, -2.99069756244244145e-01, 0.00000000000000000e+00),
    (50, -2.35114100916989255e-01, 0.00000000000000000e+00),
    (53, 8.98055953159170584e-02, 0.00000000000000000e+00),
    (55, 1.14234481878155145e-01, 0.00000000000000000e+00),
    (59, -2.99069756244244145e-01, 0.00000000000000000e+00),
    (61, 1.14234481878155145e-01, 0.00000000000000000e+00),
    (62, 1.14234481878155145e-01, 0.00000000000000000e+00),
    (63, -8.98055953159170584e-02, 0.00000000000000000e+00),
];

pub const TAILED_PSI1: &[(usize, f64, f64)] = &[
    (166, 1.70820393249936892e-01, 0.00000000000000000e+00),
    (175, 2.17286896751640146e-01, 0.00000000000000000e+00),
    (222, -1.38196601125010560e-01, -1.00405707943113640e-01),
    (223, -1.75788792127071519e-01, -1.27718033427011379e-01),
    (247, -6.71453437512513629e-02, 2.06652119061199652e-01),
    (254, -6.71453437512513629e-02, 2.06652119061199652e-01),
    (255, 5.27864045000420515e-02, -1.62459848116453170e-01),
    (318, 1.70820393249936975e-01, -5.55111512312578270e-17),
    (319, -6.71453437512513351e-02, 2.06652119061199679e-01),
    (326, -1.38196601125010560e-01, -1.00405707943113612e-01),
    (343, 1.75788792127071491e-01, -1.27718033427011463e-01),
    (367, -1.75788792127071519e-01, -1.27718033427011352e-01),
    (382, -6.71453437512513351e-02, 2.06652119061199679e-01),
    (383, 1.38196601125010587e-01, 1.00405707943113612e-01),
    (439, -1.75788792127071547e-01, -1.27718033427011352e-01),
    (446, 2.17286896751640202e-01, -5.55111512312578270e-17),
    (447, 5.27864045000420307e-02, -1.62459848116453198e-01),
    (463, -6.71453437512513629e-02, 2.06652119061199652e-01),
    (478, -1.75788792127071519e-01, -1.27718033427011352e-01),
    (479, 1.38196601125010560e-01, 1.00405707943113640e-01),
    (486, -6.71453437512513629e-02, 2.06652119061199652e-01),
    (495, 5.27864045000420515e-02, -1.62459848116453170e-01),
    (503, 1.38196601125010560e-01, 1.00405707943113612e-01),
    (510, 5.27864045000420307e-02, -1.62459848116453198e-01),
    (511, 2.42934135878322854e-01, -7.89340856341883279e-02),
];

pub const TAILED_BRAID_PSI1: &[(usize, f64, f64)] = &[
    (54, 5.27864045000421278e-02, 1.62459848116453170e-01),
    (63, 6.71453437512514462e-02, 2.06652119061199624e-01),
    (238, 5.27864045000420515e-02, 1.62459848116453170e-01),
    (239, 1.75788792127071436e-01, -1.27718033427011379e-01),
    (247, -1.75788792127071519e-01, -1.27718033427011324e-01),
    (254, 6.71453437512513907e-02, 2.06652119061199596e-01),
    (255, -1.38196601125010532e-01, 1.00405707943113640e-01),
    (326, -1.38196601125010560e-01, -1.00405707943113612e-01),
    (351, 1.75788792127071491e-01, -1.27718033427011463e-01),
    (367, -1.75788792127071519e-01, -1.27718033427011352e-01),
    (374, 1.75788792127071491e-01, -1.27718033427011463e-01),
    (383, -1.38196601125010532e-01, 1.00405707943113695e-01),
    (414, -1.38196601125010560e-01, -1.00405707943113640e-01),
    (415, -1.75788792127071519e-01, -1.27718033427011379e-01),
    (439, 1.75788792127071436e-01, -1.27718033427011463e-01),
    (446, 1.75788792127071436e-01, -1.27718033427011435e-01),
    (447, -1.38196601125010476e-01, 1.00405707943113681e-01),
    (455, -6.71453437512513629e-02, 2.06652119061199652e-01),
    (478, -1.75788792127071519e-01, -1.27718033427011352e-01),
    (479, 1.38196601125010560e-01, 1.00405707943113640e-01),
    (494, 1.75788792127071436e-01, -1.27718033427011379e-01),
    (495, 1.38196601125010504e-01, 1.00405707943113640e-01),
    (503, 1.38196601125010560e-01, 1.00405707943113570e-01),
    (510, -1.38196601125010504e-01, 1.00405707943113667e-01),
    (511, 4.16333634234433703e-17, 2.55436066854022703e-01),
];
pub const THETA_PSI1: &[(usize, f64, f64)] = &[
    (0, 7.23606797749979047e-01, 0.00000000000000000e+00),
    (3, -4.47213595499957983e-01, 0.00000000000000000e+00),
    (5, 1.70820393249936892e-01, 0.00000000000000000e+00),
    (6, -4.47213595499957983e-01, 0.00000000000000000e+00),
    (7, 2.17286896751640146e-01, 0.00000000000000000e+00),
];

pub const THETA_PSI2: &[(usize, f64, f64)] = &[
    (0, 7.23606797749979047e-01, 0.00000000000000000e+00),
    (2, -4.47213595499957983e-01, 0.00000000000000000e+00),
    (4, 1.70820393249936892e-01, 0.00000000000000000e+00),
    (6, -1.05572809000084117e-01, 0.00000000000000000e+00),
    (7, -4.85868271756645709e-01, 0.00000000000000000e+00),
];

pub const TETRA_PSI2: &[(usize, f64, f64)] = &[
    (0, 3.80422606518061479e-01, 0.00000000000000000e+00),
    (1, -2.35114100916989255e-01, 0.00000000000000000e+00),
    (20, 8.98055953159170584e-02, 0.00000000000000000e+00),
    (21, -5.55029102851550965e-02, 0.00000000000000000e+00),
    (23, -2.55436066854022759e-01, 0.00000000000000000e+00),
    (32, -2.35114100916989255e-01, 0.00000000000000000e+00),
    (33, 1.45308505601072141e-01, 0.00000000000000000e+00),
    (47, 6.68740304976422006e-01, 0.00000000000000000e+00),
    (52, -5.55029102851550965e-02, 0.00000000000000000e+00),
    (53, 3.43026850307619202e-02, 0.00000000000000000e+00),
    (55, 1.57868171268376517e-01, 0.00000000000000000e+00),
    (59, -2.55436066854022759e-01, 0.00000000000000000e+00),
    (60, -2.55436066854022759e-01, 0.00000000000000000e+00),
    (61, 1.57868171268376517e-01, 0.00000000000000000e+00),
    (63, -1.24108280346679048e-01, 0.00000000000000000e+00),
];

pub const GROUND_SINGLE: &[(usize, f64, f64)] = &[
    (0, 5.25731112119133592e-01, 0.00000000000000000e+00),
    (1, 8.50650808352039989e-01, 0.00000000000000000e+00),
];

pub const GROUND_THETA: &[(usize, f64, f64)] = &[
    (0, 2.76393202250021008e-01, 0.00000000000000000e+00),
    (3, 4.47213595499957983e-01, 0.00000000000000000e+00),
    (5, 4.47213595499957928e-01, 0.00000000000000000e+00),
    (6, 4.47213595499957983e-01, 0.00000000000000000e+00),
    (7, 5.68864481005783129e-01, 0.00000000000000000e+00),
];

pub const GROUND_TETRA: &[(usize, f64, f64)] = &[
    (0, 1.45308505601072169e-01, 0.00000000000000000e+00),
    (7, 2.35114100916989255e-01, 0.00000000000000000e+00),
    (25, 2.35114100916989255e-01, 0.00000000000000000e+00),
    (30, 2.35114100916989255e-01, 0.00000000000000000e+00),
    (31, 2.99069756244244089e-01, 0.00000000000000000e+00),
    (43, 2.35114100916989255e-01, 0.00000000000000000e+00),
    (44, 2.35114100916989255e-01, 0.00000000000000000e+00),
    (47, 2.99069756244244145e-01, 0.00000000000000000e+00),
    (50, 2.35114100916989255e-01, 0.00000000000000000e+00),
    (53, 2.35114100916989227e-01, 0.00000000000000000e+00),
    (55, 2.99069756244244089e-01, 0.00000000000000000e+00),
    (59, 2.99069756244244145e-01, 0.00000000000000000e+00),
    (61, 2.99069756244244089e-01, 0.00000000000000000e+00),
    (62, 2.99069756244244145e-01, 0.00000000000000000e+00),
    (63, -2.35114100916989227e-01, 0.00000000000000000e+00),
];

pub const GROUND_TAILED: &[(usize, f64, f64)] = &[
    (0, 2.76393202250021008e-01, 0.00000000000000000e+00),
    (120, 4.47213595499957983e-01, 0.00000000000000000e+00),
    (408, 4.47213595499957928e-01, 0.00000000000000000e+00),
    (480, 4.47213595499957983e-01, 0.00000000000000000e+00),
    (504, 5.68864481005783129e-01, 0.00000000000000000e+00),
];
