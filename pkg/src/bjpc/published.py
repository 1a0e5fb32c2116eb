"""Published reference values used by ``bjpc reproduce`` and the acceptance tests."""


def _block(k, pos, size):
    R = [0] * (k - 1)
    R[pos] = size
    return tuple(R)


ESTIMATION_SCHEMES = [
    (25, 15, _block(15, 0, 7)),
    (25, 15, _block(15, 6, 7)),
    (25, 15, _block(15, 13, 7)),
    (25, 20, _block(20, 0, 3)),
    (25, 20, _block(20, 9, 3)),
    (25, 20, _block(20, 18, 3)),
]

# (alpha, lambda1, lambda2) used by Tables 1-6
ESTIMATION_TRUTH = {1: (0.5, 0.5, 1.0), 2: (1.0, 0.5, 1.0), 3: (2.0, 0.5, 1.0),
                    4: (0.5, 0.5, 1.0), 5: (1.0, 0.5, 1.0), 6: (2.0, 0.5, 1.0)}

# per scheme row: {parameter: (MLE AE, MLE MSE, AMLE AE, AMLE MSE)}
POINT_TABLES = {
    1: [
        {"alpha": (0.550, 0.017, 0.534, 0.015), "lambda1": (0.576, 0.109, 0.568, 0.101), "lambda2": (1.149, 0.279, 1.132, 0.253)},
        {"alpha": (0.552, 0.019, 0.547, 0.018), "lambda1": (0.601, 0.143, 0.595, 0.137), "lambda2": (1.198, 0.371, 1.187, 0.352)},
        {"alpha": (0.564, 0.024, 0.559, 0.023), "lambda1": (0.628, 0.184, 0.622, 0.176), "lambda2": (1.248, 0.514, 1.236, 0.491)},
        {"alpha": (0.537, 0.012, 0.529, 0.011), "lambda1": (0.547, 0.056, 0.544, 0.054), "lambda2": (1.079, 0.123, 1.074, 0.118)},
        {"alpha": (0.539, 0.013, 0.534, 0.012), "lambda1": (0.548, 0.062, 0.546, 0.061), "lambda2": (1.097, 0.147, 1.093, 0.143)},
        {"alpha": (0.538, 0.012, 0.529, 0.011), "lambda1": (0.542, 0.055, 0.539, 0.054), "lambda2": (1.083, 0.130, 1.078, 0.125)},
    ],
    2: [
        {"alpha": (1.096, 0.071, 1.064, 0.063), "lambda1": (0.575, 0.103, 0.566, 0.095), "lambda2": (1.154, 0.292, 1.136, 0.264)},
        {"alpha": (1.107, 0.078, 1.096, 0.074), "lambda1": (0.602, 0.155, 0.597, 0.148), "lambda2": (1.204, 0.446, 1.193, 0.426)},
        {"alpha": (1.126, 0.101, 1.116, 0.097), "lambda1": (0.620, 0.210, 0.614, 0.201), "lambda2": (1.244, 0.660, 1.232, 0.625)},
        {"alpha": (1.082, 0.057, 1.073, 0.055), "lambda1": (0.557, 0.066, 0.554, 0.064), "lambda2": (1.109, 0.162, 1.105, 0.158)},
        {"alpha": (1.080, 0.052, 1.071, 0.050), "lambda1": (0.550, 0.060, 0.548, 0.059), "lambda2": (1.093, 0.139, 1.089, 0.135)},
        {"alpha": (1.085, 0.058, 1.076, 0.056), "lambda1": (0.555, 0.066, 0.553, 0.065), "lambda2": (1.113, 0.172, 1.109, 0.167)},
    ],
    3: [
        {"alpha": (2.209, 0.294, 2.147, 0.259), "lambda1": (0.578, 0.110, 0.569, 0.101), "lambda2": (1.150, 0.289, 1.132, 0.258)},
        {"alpha": (2.220, 0.319, 2.197, 0.304), "lambda1": (0.597, 0.132, 0.592, 0.126), "lambda2": (1.192, 0.388, 1.181, 0.365)},
        {"alpha": (2.261, 0.414, 2.240, 0.397), "lambda1": (0.630, 0.193, 0.624, 0.184), "lambda2": (1.253, 0.531, 1.241, 0.504)},
        {"alpha": (2.148, 0.191, 2.113, 0.178), "lambda1": (0.545, 0.055, 0.542, 0.054), "lambda2": (1.087, 0.131, 1.081, 0.125)},
        {"alpha": (2.158, 0.207, 2.140, 0.199), "lambda1": (0.548, 0.060, 0.546, 0.059), "lambda2": (1.098, 0.141, 1.094, 0.137)},
        {"alpha": (2.164, 0.227, 2.145, 0.218), "lambda1": (0.552, 0.063, 0.549, 0.062), "lambda2": (1.108, 0.155, 1.103, 0.151)},
    ],
}

# per scheme row: {parameter: (bootstrap AL, bootstrap CP %, asymptotic AL, asymptotic CP %)}
INTERVAL_TABLES = {
    4: [
        {"alpha": (0.435, 83.1, 0.378, 90.1), "lambda1": (1.141, 87.8, 0.882, 90.1), "lambda2": (1.812, 84.5, 1.296, 92.1)},
        {"alpha": (0.457, 78.8, 0.378, 89.8), "lambda1": (1.374, 86.8, 0.937, 90.6), "lambda2": (2.245, 83.8, 1.430, 92.9)},
        {"alpha": (0.519, 79.2, 0.431, 89.7), "lambda1": (1.809, 84.1, 1.049, 91.1), "lambda2": (3.084, 82.2, 1.667, 93.8)},
        {"alpha": (0.365, 82.9, 0.323, 89.6), "lambda1": (0.811, 88.6, 0.700, 88.3), "lambda2": (1.241, 86.4, 1.018, 90.5)},
        {"alpha": (0.366, 83.2, 0.323, 89.3), "lambda1": (0.836, 89.6, 0.711, 88.8), "lambda2": (1.285, 87.5, 1.044, 90.5)},
        {"alpha": (0.392, 84.7, 0.343, 90.3), "lambda1": (0.852, 88.7, 0.724, 89.3), "lambda2": (1.355, 85.7, 1.065, 90.8)},
    ],
    5: [
        {"alpha": (0.866, 83.6, 0.759, 89.9), "lambda1": (1.089, 89.7, 0.869, 89.4), "lambda2": (1.745, 86.2, 1.293, 92.0)},
        {"alpha": (0.914, 78.4, 0.758, 90.0), "lambda1": (1.525, 86.8, 0.947, 90.5), "lambda2": (2.683, 82.8, 1.451, 93.5)},
        {"alpha": (1.027, 81.7, 0.862, 90.1), "lambda1": (1.639, 88.4, 1.053, 91.4), "lambda2": (2.810, 84.4, 1.667, 93.7)},
        {"alpha": (0.726, 82.3, 0.643, 90.3), "lambda1": (0.808, 87.2, 0.697, 88.5), "lambda2": (1.222, 86.1, 1.012, 90.3)},
        {"alpha": (0.7355, 82.5, 0.648, 89.9), "lambda1": (0.835, 88.9, 0.712, 89.2), "lambda2": (1.292, 86.0, 1.039, 90.7)},
        {"alpha": (0.789, 81.9, 0.684, 90.2), "lambda1": (0.920, 86.7, 0.723, 89.7), "lambda2": (1.419, 84.8, 1.063, 90.7)},
    ],
    6: [
        {"alpha": (1.774, 81.4, 1.515, 90.1), "lambda1": (1.169, 87.6, 0.873, 89.8), "lambda2": (1.875, 85.7, 1.300, 91.9)},
        {"alpha": (1.813, 79.7, 1.521, 89.1), "lambda1": (1.332, 88.1, 0.948, 90.0), "lambda2": (2.227, 83.1, 1.440, 93.0)},
        {"alpha": (2.101, 78.6, 1.722, 90.0), "lambda1": (1.765, 86.4, 1.074, 91.2), "lambda2": (3.010, 83.5, 1.708, 93.7)},
        {"alpha": (1.461, 80.9, 1.294, 89.8), "lambda1": (0.821, 88.0, 0.699, 88.9), "lambda2": (1.237, 86.6, 1.014, 90.0)},
        {"alpha": (1.478, 81.0, 1.296, 89.8), "lambda1": (0.844, 88.7, 0.713, 89.0), "lambda2": (1.294, 86.2, 1.044, 90.5)},
        {"alpha": (1.555, 83.3, 1.374, 89.3), "lambda1": (0.883, 89.6, 0.724, 89.3), "lambda2": (1.386, 86.0, 1.066, 91.5)},
    ],
}

VOLUME_TRUTH = {7: (0.5, 0.5, 1.0), 8: (1.0, 0.5, 1.0), 9: (2.0, 0.5, 1.0)}

# rows: (m, k, position of the size-5 block (0-based), E(Vol), ETOT)
_POS_25 = (0, 1, 2, 3, 4, 8, 14, 16, 17, 18)
_POS_30 = (0, 1, 2, 3, 5, 8, 12, 15, 18, 23)
_VOL = {
    7: ([12.463, 12.583, 12.845, 13.032, 13.243, 14.614, 17.319, 20.768, 20.918, 22.883],
        [6.420, 6.383, 6.369, 6.245, 6.181, 6.043, 5.092, 4.458, 3.884, 3.023],
        [9.616, 9.718, 9.743, 9.834, 9.908, 10.304, 10.680, 11.217, 12.045, 14.197],
        [7.181, 7.145, 7.081, 7.074, 6.986, 6.954, 6.675, 6.454, 5.934, 3.451]),
    8: ([24.360, 25.214, 25.524, 26.034, 26.513, 28.065, 36.513, 38.831, 40.552, 46.317],
        [2.393, 2.384, 2.374, 2.366, 2.359, 2.300, 2.120, 1.963, 1.816, 1.582],
        [19.331, 19.414, 19.538, 19.895, 20.094, 20.665, 21.478, 22.538, 23.846, 28.662],
        [2.549, 2.536, 2.524, 2.523, 2.522, 2.488, 2.445, 2.374, 2.274, 1.692]),
    9: ([49.927, 50.653, 51.265, 51.578, 52.719, 57.245, 67.359, 77.601, 88.436, 89.061],
        [1.523, 1.522, 1.515, 1.512, 1.508, 1.492, 1.424, 1.365, 1.322, 1.229],
        [38.486, 38.571, 38.781, 39.411, 40.220, 41.074, 43.549, 45.367, 48.084, 55.966],
        [1.572, 1.572, 1.569, 1.568, 1.561, 1.560, 1.538, 1.517, 1.486, 1.277]),
}


def volume_rows(table):
    v25, e25, v30, e30 = _VOL[table]
    rows = [(25, 20, _block(20, p, 5), v, e) for p, v, e in zip(_POS_25, v25, e25)]
    rows += [(30, 25, _block(25, p, 5), v, e) for p, v, e in zip(_POS_30, v30, e30)]
    return rows


REAL_DATA_FITS = {
    10: ("scheme1", {"MLE": (0.983459, 0.017541, 0.017541), "AMLE": (0.982218, 0.017622, 0.017622)}),
    12: ("scheme2", {"MLE": (1.1740, 0.01367, 0.009116), "AMLE": (1.1612, 0.01421, 0.009479)}),
}

# {parameter: (asymptotic lower, upper, bootstrap lower, upper)} at level 0.90
REAL_DATA_CIS = {
    11: ("scheme1", {"alpha": (0.6508, 1.3160, 0.7253, 1.5900),
                     "lambda1": (0.0, 0.0426, 0.001641, 0.05592),
                     "lambda2": (0.0, 0.0426, 0.001644, 0.05623)}),
    13: ("scheme2", {"alpha": (0.7533, 1.5947, 0.91046, 2.036402),
                     "lambda1": (0.0, 0.03351, 0.001241, 0.03696),
                     "lambda2": (0.0, 0.02303, 0.0007122, 0.02532)}),
}

PUBLISHED_REPS = {"estimation": 10_000, "bootstrap": 1000, "volume": 50_000, "etot": 10_000}
