"""Golden relative-error aggregates (percent) for the study tables.

Keyed by table number, policy id, then statistic; each tuple holds the
six server-configuration columns in SERVER_COLUMNS order.
"""

SERVER_COLUMNS = ((2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3))

GOLDEN_TABLES = {
    5: {
        'heuristic': {
            'max': (0.19, 1.47, 0.69, 3.33, 0.99, 1.13),
            'avg': (0.01, 0.09, 0.06, 0.28, 0.1, 0.11),
            'std': (0.03, 0.27, 0.14, 0.68, 0.22, 0.23),
        },
        'pi1': {
            'max': (235.16, 147.05, 379.17, 96.42, 277.65, 451.97),
            'avg': (25.88, 16.45, 48.76, 11.42, 36.21, 62.95),
            'std': (38.58, 23.38, 63.31, 15.49, 46.22, 73.49),
        },
        'pi2': {
            'max': (109.3, 65.51, 181.64, 75.62, 127.42, 218.39),
            'avg': (22.48, 24.07, 23.58, 26.98, 18.25, 28.12),
            'std': (15.32, 14.44, 28.54, 18.28, 19.09, 35.19),
        },
        'pi3': {
            'max': (263.48, 363.05, 140.66, 430.67, 180.97, 94.7),
            'avg': (66.48, 99.52, 27.2, 122.72, 40.56, 14.59),
            'std': (58.63, 77.97, 31.43, 89.53, 40.47, 20.33),
        },
        'pi4': {
            'max': (101.56, 88.43, 120.08, 68.03, 137.02, 114.47),
            'avg': (9.66, 6.24, 14.06, 4.58, 13.11, 14.31),
            'std': (15.5, 12.56, 19.23, 9.45, 21.06, 17.81),
        },
    },
    6: {
        'heuristic': {
            'max': (1.35, 5.73, 1.61, 5.06, 3.65, 2.45),
            'avg': (0.08, 0.3, 0.12, 0.34, 0.28, 0.14),
            'std': (0.23, 0.92, 0.3, 0.92, 0.66, 0.39),
        },
        'pi1': {
            'max': (723.99, 500.79, 1078.51, 371.49, 822.65, 1255.11),
            'avg': (88.39, 58.56, 127.38, 42.28, 96.82, 142.77),
            'std': (100.69, 70.01, 140.37, 52.61, 108.51, 153.55),
        },
        'pi2': {
            'max': (356.55, 238.55, 533.24, 170.89, 398.28, 621.66),
            'avg': (52.25, 39.35, 66.65, 33.81, 48.94, 73.26),
            'std': (45.24, 28.6, 67.95, 22.6, 50.44, 75.62),
        },
        'pi3': {
            'max': (73.52, 134.47, 36.17, 188.21, 66.05, 23.79),
            'avg': (27.86, 51.36, 9.97, 70.51, 19.38, 4.66),
            'std': (22.58, 41.13, 10.26, 56.39, 19.4, 5.86),
        },
        'pi4': {
            'max': (201.34, 226.78, 200.95, 214.64, 271.92, 184.83),
            'avg': (13.76, 14.99, 14.66, 14.05, 19.95, 12.75),
            'std': (30.19, 32.35, 27.8, 29.89, 36.81, 23.18),
        },
    },
    7: {
        'heuristic': {
            'max': (0.13, 1.0, 0.47, 2.28, 0.68, 0.78),
            'avg': (0.0, 0.06, 0.03, 0.18, 0.06, 0.07),
            'std': (0.02, 0.18, 0.09, 0.46, 0.15, 0.15),
        },
        'pi1': {
            'max': (199.32, 127.67, 345.3, 87.88, 258.57, 428.48),
            'avg': (20.53, 13.48, 40.97, 9.68, 30.73, 55.24),
            'std': (32.3, 19.8, 58.31, 13.14, 42.89, 71.65),
        },
        'pi2': {
            'max': (125.76, 76.75, 224.13, 52.33, 163.5, 280.02),
            'avg': (17.96, 17.14, 25.6, 17.62, 19.14, 33.52),
            'std': (17.5, 10.64, 36.69, 10.89, 25.53, 46.65),
        },
        'pi3': {
            'max': (302.39, 434.99, 175.94, 539.87, 227.08, 125.95),
            'avg': (83.16, 127.23, 37.06, 160.02, 55.68, 21.7),
            'std': (68.35, 94.1, 39.63, 111.64, 51.82, 27.67),
        },
        'pi4': {
            'max': (80.14, 70.83, 102.79, 54.05, 119.13, 101.32),
            'avg': (8.8, 5.12, 13.18, 3.49, 11.16, 13.97),
            'std': (12.41, 9.63, 17.15, 7.09, 18.18, 16.96),
        },
    },
    8: {
        'heuristic': {
            'max': (0.9, 3.9, 1.09, 3.52, 2.53, 1.69),
            'avg': (0.05, 0.2, 0.07, 0.22, 0.18, 0.09),
            'std': (0.15, 0.61, 0.2, 0.62, 0.45, 0.26),
        },
        'pi1': {
            'max': (638.11, 456.8, 998.9, 347.19, 780.56, 1202.72),
            'avg': (81.88, 54.78, 122.72, 39.92, 93.82, 142.47),
            'std': (90.14, 63.9, 135.04, 48.5, 106.24, 153.97),
        },
        'pi2': {
            'max': (423.35, 296.69, 664.52, 220.93, 512.76, 800.42),
            'avg': (61.01, 43.41, 85.67, 34.85, 63.9, 98.2),
            'std': (56.73, 37.38, 88.54, 27.13, 68.01, 101.88),
        },
        'pi3': {
            'max': (76.43, 143.88, 38.18, 205.78, 71.38, 25.15),
            'avg': (32.12, 60.29, 12.47, 84.42, 24.37, 6.41),
            'std': (23.34, 43.52, 11.24, 61.01, 21.52, 6.77),
        },
        'pi4': {
            'max': (164.77, 191.79, 169.16, 184.9, 233.71, 157.4),
            'avg': (10.54, 11.56, 12.23, 10.8, 16.63, 11.28),
            'std': (25.28, 27.66, 24.88, 25.73, 33.36, 21.26),
        },
    },
    9: {
        'heuristic': {
            'max': (0.05, 0.07, 0.19, 0.09, 0.21, 0.38),
            'avg': (0.01, 0.01, 0.03, 0.01, 0.04, 0.06),
            'std': (0.02, 0.02, 0.06, 0.03, 0.07, 0.12),
        },
        'tpi1': {
            'max': (13.66, 7.41, 12.4, 4.46, 7.56, 9.37),
            'avg': (1.49, 0.53, 1.1, 0.2, 0.48, 0.69),
            'std': (3.16, 1.38, 2.73, 0.66, 1.39, 1.97),
        },
        'tpi2': {
            'max': (91.73, 144.59, 57.04, 187.62, 79.32, 44.26),
            'avg': (59.0, 102.03, 29.41, 135.0, 48.53, 19.81),
            'std': (14.45, 18.95, 11.5, 22.31, 14.51, 9.99),
        },
        'tpi3': {
            'max': (190.82, 308.29, 113.75, 409.46, 164.29, 88.41),
            'avg': (114.14, 200.69, 63.66, 271.14, 104.87, 46.11),
            'std': (34.69, 47.7, 23.9, 58.65, 29.19, 19.64),
        },
        'tpi4': {
            'max': (32.49, 22.69, 41.57, 17.38, 32.46, 45.05),
            'avg': (10.08, 7.3, 14.72, 5.36, 11.73, 17.32),
            'std': (9.03, 5.74, 11.42, 4.0, 8.25, 12.08),
        },
    },
    10: {
        'heuristic': {
            'max': (0.03, 0.04, 0.1, 0.05, 0.11, 0.2),
            'avg': (0.01, 0.01, 0.02, 0.01, 0.02, 0.04),
            'std': (0.01, 0.01, 0.03, 0.02, 0.04, 0.07),
        },
        'tpi1': {
            'max': (16.65, 9.72, 17.17, 6.34, 11.33, 14.89),
            'avg': (2.31, 0.96, 1.95, 0.44, 1.0, 1.46),
            'std': (4.17, 2.07, 4.11, 1.13, 2.38, 3.43),
        },
        'tpi2': {
            'max': (131.11, 215.88, 81.19, 290.75, 119.12, 64.07),
            'avg': (80.95, 147.08, 43.43, 203.43, 75.01, 30.76),
            'std': (20.79, 29.02, 15.97, 35.93, 19.86, 14.04),
        },
        'tpi3': {
            'max': (198.28, 330.11, 121.44, 449.58, 180.73, 95.99),
            'avg': (114.8, 209.99, 65.31, 293.28, 112.02, 48.43),
            'std': (36.04, 52.5, 25.6, 66.34, 32.75, 21.62),
        },
        'tpi4': {
            'max': (32.09, 22.65, 41.87, 17.46, 32.82, 46.05),
            'avg': (8.91, 6.78, 13.34, 5.24, 11.0, 16.05),
            'std': (9.04, 6.01, 11.86, 4.28, 8.82, 12.9),
        },
    },
}
