"""Published solvable fractions estimated from 10^6 sampled graphs per edge count.

The n = 13 listing has no rows for e = 26 and e = 52.
"""

from __future__ import annotations

REFERENCE_8 = {
    1: 0.0,
    2: 0.499919,
    3: 0.199316,
    4: 0.363499,
    5: 0.249911,
    6: 0.32191,
    7: 0.312796,
    8: 0.321971,
    9: 0.325698,
    10: 0.34395,
    11: 0.346355,
    12: 0.3591,
    13: 0.353405,
    14: 0.354413,
    15: 0.345785,
    16: 0.336634,
    17: 0.304621,
    18: 0.273169,
    19: 0.219285,
    20: 0.167277,
    21: 0.104666,
    22: 0.071329,
    23: 0.041872,
    24: 0.091008,
    25: 0.0,
    26: 0.0,
    27: 0.0,
}

REFERENCE_11 = {
    1: 0.0,
    2: 0.499724,
    3: 0.200551,
    4: 0.363507,
    5: 0.230845,
    6: 0.283949,
    7: 0.244384,
    8: 0.263545,
    9: 0.262488,
    10: 0.283742,
    11: 0.295869,
    12: 0.31447,
    13: 0.328777,
    14: 0.344268,
    15: 0.357644,
    16: 0.368724,
    17: 0.376659,
    18: 0.383929,
    19: 0.388856,
    20: 0.393536,
    21: 0.396004,
    22: 0.396182,
    23: 0.397806,
    24: 0.398648,
    25: 0.398657,
    26: 0.39797,
    27: 0.397904,
    28: 0.397958,
    29: 0.398135,
    30: 0.39727,
    31: 0.395805,
    32: 0.393628,
    33: 0.390987,
    34: 0.38607,
    35: 0.378623,
    36: 0.370198,
    37: 0.358598,
    38: 0.344516,
    39: 0.324121,
    40: 0.299494,
    41: 0.267545,
    42: 0.229736,
    43: 0.184645,
    44: 0.140461,
    45: 0.096906,
    46: 0.06832,
    47: 0.040787,
    48: 0.035003,
    49: 0.014937,
    50: 0.038504,
    51: 0.0,
    52: 0.0,
    53: 0.0,
    54: 0.0,
}

REFERENCE_12 = {
    1: 0.0,
    2: 0.499463,
    3: 0.200089,
    4: 0.364492,
    5: 0.230357,
    6: 0.279425,
    7: 0.240084,
    8: 0.255557,
    9: 0.248556,
    10: 0.264135,
    11: 0.275422,
    12: 0.290852,
    13: 0.307977,
    14: 0.323746,
    15: 0.340155,
    16: 0.354,
    17: 0.364707,
    18: 0.375543,
    19: 0.382263,
    20: 0.387929,
    21: 0.392398,
    22: 0.396219,
    23: 0.398679,
    24: 0.400726,
    25: 0.40263,
    26: 0.404618,
    27: 0.406422,
    28: 0.406209,
    29: 0.407586,
    30: 0.407843,
    31: 0.407941,
    32: 0.408232,
    33: 0.407777,
    34: 0.407194,
    35: 0.408278,
    36: 0.407095,
    37: 0.404648,
    38: 0.401894,
    39: 0.398517,
    40: 0.39294,
    41: 0.387447,
    42: 0.379956,
    43: 0.36914,
    44: 0.355199,
    45: 0.338081,
    46: 0.315321,
    47: 0.288664,
    48: 0.255777,
    49: 0.217856,
    50: 0.178374,
    51: 0.136891,
    52: 0.098461,
    53: 0.065641,
    54: 0.041626,
    55: 0.025507,
    56: 0.016212,
    57: 0.010773,
    58: 0.008299,
    59: 0.00567,
    60: 0.014655,
    61: 0.0,
    62: 0.0,
    63: 0.0,
    64: 0.0,
    65: 0.0,
}

REFERENCE_13 = {
    1: 0.0,
    2: 0.499294,
    3: 0.199568,
    4: 0.363899,
    5: 0.230106,
    6: 0.279965,
    7: 0.238693,
    8: 0.252276,
    9: 0.241871,
    10: 0.253103,
    11: 0.260253,
    12: 0.272231,
    13: 0.286001,
    14: 0.302467,
    15: 0.318041,
    16: 0.333833,
    17: 0.346637,
    18: 0.358702,
    19: 0.368772,
    20: 0.376524,
    21: 0.38401,
    22: 0.389572,
    23: 0.394758,
    24: 0.398829,
    25: 0.401359,
    27: 0.40643,
    28: 0.408858,
    29: 0.409305,
    30: 0.410125,
    31: 0.411138,
    32: 0.411297,
    33: 0.412302,
    34: 0.412295,
    35: 0.412268,
    36: 0.411811,
    37: 0.411792,
    38: 0.41204,
    39: 0.412263,
    40: 0.41153,
    41: 0.411892,
    42: 0.411205,
    43: 0.411874,
    44: 0.410961,
    45: 0.410177,
    46: 0.410095,
    47: 0.407995,
    48: 0.405994,
    49: 0.403351,
    50: 0.401896,
    51: 0.397383,
    53: 0.387123,
    54: 0.38022,
    55: 0.371224,
    56: 0.358582,
    57: 0.342884,
    58: 0.32463,
    59: 0.300909,
    60: 0.272193,
    61: 0.236771,
    62: 0.198391,
    63: 0.156529,
    64: 0.116132,
    65: 0.08077,
    66: 0.053189,
    67: 0.033189,
    68: 0.022349,
    69: 0.014105,
    70: 0.012321,
    71: 0.005739,
    72: 0.014552,
    73: 0.0,
    74: 0.0,
    75: 0.0,
    76: 0.0,
    77: 0.0,
}

REFERENCE = {8: REFERENCE_8, 11: REFERENCE_11, 12: REFERENCE_12, 13: REFERENCE_13}
