"""Published reference results for the bundled case studies.

These constants back the `concord reproduce` report: the four-currency
return study, the four-asset Kendall matrix that is attainable but not
elliptical, the trivariate heavy-tail limit, and the six-dimensional
orthant-probability study.  Values carry the precision they were published
with (3 or 4 decimals), which the reproduction tolerances account for.
"""

import numpy as np

# four-currency daily log-return study (d=4): even signature and weights
CRYPTO_KAPPA = np.array([1.0, 0.639, 0.666, 0.598, 0.681, 0.630, 0.661, 0.364])
CRYPTO_W = np.array([0.364, 0.129, 0.069, 0.077, 0.098, 0.075, 0.066, 0.122])

# the 8x8 coefficient matrix for d=4, rows over {}, pairs, {1,2,3,4}
A4 = np.array(
    [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [1, 1, 1, 1, 0, 0, 0, 0],
        [1, 1, 0, 0, 1, 1, 0, 0],
        [1, 0, 1, 0, 1, 0, 1, 0],
        [1, 1, 0, 0, 0, 0, 1, 1],
        [1, 0, 1, 0, 0, 1, 0, 1],
        [1, 0, 0, 1, 1, 0, 0, 1],
        [1, 0, 0, 0, 0, 0, 0, 0],
    ],
    dtype=float,
)

# four-asset Kendall matrix: cut-polytope member, not elliptical
FOURASSET_TAU = np.array(
    [
        [1.0, -0.19, -0.29, 0.49],
        [-0.19, 1.0, -0.34, 0.30],
        [-0.29, -0.34, 1.0, -0.79],
        [0.49, 0.30, -0.79, 1.0],
    ]
)
FOURASSET_KAPPA4_BOUNDS = (0.04, 0.0425)
FOURASSET_VERTEX_LO = np.array([0.04, 0.005, 0.36, 0.0, 0.0625, 0.2475, 0.2825, 0.0025])
FOURASSET_VERTEX_HI = np.array([0.0425, 0.0025, 0.3575, 0.0025, 0.06, 0.25, 0.285, 0.0])

# trivariate correlation matrix and its heavy-tail limit weights per diagonal
TRIVARIATE_P = np.array([[1.0, 0.2, 0.5], [0.2, 1.0, 0.8], [0.5, 0.8, 1.0]])
TRIVARIATE_LIMIT_W = np.array([0.513, 0.051, 0.154, 0.282])

# six-dimensional correlation matrix with upper triangle 1/16 .. 15/16
SIXDIM_P = np.eye(6)
_vals = iter(range(1, 16))
for _i in range(6):
    for _j in range(_i + 1, 6):
        SIXDIM_P[_i, _j] = SIXDIM_P[_j, _i] = next(_vals) / 16.0

# published weights (4 decimals) indexed by diagonal k = 1..32
SIXDIM_W = np.array(
    [
        0.2627, 0.0009, 0.0131, 0.0037, 0.0304, 0.0037, 0.0088, 0.0179,
        0.0579, 0.0029, 0.0100, 0.0108, 0.0165, 0.0085, 0.0063, 0.0659,
        0.1037, 0.0029, 0.0114, 0.0091, 0.0193, 0.0073, 0.0062, 0.0390,
        0.0338, 0.0064, 0.0076, 0.0232, 0.0100, 0.0136, 0.0036, 0.1831,
    ]
)

# published even signature (4 decimals), graded lexicographic order
SIXDIM_KAPPA = np.array(
    [
        1.0000,
        0.5199, 0.5399, 0.5600, 0.5804, 0.6012, 0.6224, 0.6441, 0.6667,
        0.6902, 0.7149, 0.7413, 0.7699, 0.8019, 0.8391, 0.8869,
        0.2804, 0.2977, 0.3150, 0.3244, 0.3437, 0.3675, 0.3702, 0.3909,
        0.4161, 0.4581, 0.4503, 0.4725, 0.4993, 0.5427, 0.6153,
        0.2627,
    ]
)

# high-precision verification anchors for the six-dimensional study,
# computed once by deterministic Gaussian-orthant quadrature (absolute
# accuracy ~1e-6; repeated-run spread 2e-7).  The published table is its
# authors' own Monte Carlo run and sits within 1.7e-4 of these anchors;
# comparisons against the table must allow for that demonstrated noise.
SIXDIM_W_ANCHOR = np.array(
    [
        0.2626585, 0.0009813, 0.0130156, 0.0036955,
        0.0304381, 0.0036494, 0.0087773, 0.0178632,
        0.0579295, 0.0029121, 0.0100235, 0.0108250,
        0.0164633, 0.0084701, 0.0063112, 0.0658937,
        0.1037099, 0.0028497, 0.0114028, 0.0091030,
        0.0193011, 0.0072199, 0.0061998, 0.0390280,
        0.0337932, 0.0063473, 0.0076388, 0.0231527,
        0.0099379, 0.0137694, 0.0035659, 0.1830732,
    ]
)
# entries aligned with the |I| >= 4 labels in graded lexicographic order,
# then the full set
SIXDIM_KAPPA_ANCHOR_HIGH = np.array(
    [
        0.2803508, 0.2977273, 0.3148895, 0.3244814, 0.3436271, 0.3674894,
        0.3701993, 0.3907868, 0.4161075, 0.4580911, 0.4502789, 0.4725166,
        0.4993225, 0.5426892, 0.6153353,
        0.2626585,
    ]
)
ANCHOR_ACCURACY = 2e-6
TABLE_MC_NOISE = 2e-4  # measured max deviation of the published run from the anchors

# d=5 compatibility study: all pairs 2/3 plus two four-sets at 0.4
FIVE_DIM_PAIR_VALUE = 2.0 / 3.0
FIVE_DIM_FOUR_SETS = ((1, 2, 3, 4), (1, 2, 3, 5))
FIVE_DIM_FOUR_VALUE = 0.4
FIVE_DIM_VERTEX_COUNT = 9

PRINT_ROUNDING_3DP = 5e-4
PRINT_ROUNDING_4DP = 5e-5
