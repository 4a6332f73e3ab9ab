"""Static critical-value tables for the rank statistics.

Chi-square critical values are indexed by degrees of freedom (1..19, i.e.
up to 20 algorithms); the studentized-range-based q constants for the
critical-distance test are indexed by the number of algorithms (2..20).
Both tables cover alpha in {0.05, 0.01}.  Values are frozen here so the
statistics run without a stats library at runtime; the test suite
cross-checks them against scipy.
"""

CHI2_CRITICAL = {
    0.05: {
        1: 3.841459, 2: 5.991465, 3: 7.814728, 4: 9.487729, 5: 11.070498,
        6: 12.591587, 7: 14.067140, 8: 15.507313, 9: 16.918978,
        10: 18.307038, 11: 19.675138, 12: 21.026070, 13: 22.362032,
        14: 23.684791, 15: 24.995790, 16: 26.296228, 17: 27.587112,
        18: 28.869299, 19: 30.143527,
    },
    0.01: {
        1: 6.634897, 2: 9.210340, 3: 11.344867, 4: 13.276704, 5: 15.086272,
        6: 16.811894, 7: 18.475307, 8: 20.090235, 9: 21.665994,
        10: 23.209251, 11: 24.724970, 12: 26.216967, 13: 27.688250,
        14: 29.141238, 15: 30.577914, 16: 31.999927, 17: 33.408664,
        18: 34.805306, 19: 36.190869,
    },
}

# q_alpha(k) = studentized_range.ppf(1 - alpha, k, inf) / sqrt(2)
NEMENYI_Q = {
    0.05: {
        2: 1.959964, 3: 2.343701, 4: 2.569032, 5: 2.727774, 6: 2.849705,
        7: 2.948320, 8: 3.030878, 9: 3.101730, 10: 3.163684, 11: 3.218654,
        12: 3.268004, 13: 3.312739, 14: 3.353618, 15: 3.391230,
        16: 3.426041, 17: 3.458425, 18: 3.488685, 19: 3.517073,
        20: 3.543799,
    },
    0.01: {
        2: 2.575829, 3: 2.913494, 4: 3.113250, 5: 3.254686, 6: 3.363740,
        7: 3.452213, 8: 3.526471, 9: 3.590339, 10: 3.646292, 11: 3.696021,
        12: 3.740733, 13: 3.781318, 14: 3.818451, 15: 3.852654,
        16: 3.884343, 17: 3.913850, 18: 3.941446, 19: 3.967357,
        20: 3.991770,
    },
}
