import math

import numpy as np

#: Euler–Mascheroni constant.
EULER_GAMMA = float(np.euler_gamma)
#: Limit of ``pi * R_N - log N`` for the 2D simple random walk.
OVERLAP_ALPHA = 4 * math.log(2) + EULER_GAMMA - math.pi

#: Threshold of the finite-volume criterion for half-moments.
FINITE_VOLUME_THRESHOLD = 1 / 300

#: Default log scope if no specific experiment context is available
LOG_DEFAULT_EXPERIMENT_CONTEXT = "global"

#: Environment variable holding the number of worker processes for replica blocks.
WORKERS_ENVIRONMENT_VARIABLE = "POLYMER_LAB_WORKERS"

EXIT_CHECKS_FAILED = 1
EXIT_UNKNOWN_EXPERIMENT = 2
EXIT_INVALID_CONFIG = 3
EXIT_INTERRUPTED = 130

# Leading spawn-key words separating the independent random streams of one replica.
FIELD_STREAM_TAG = 0
PATH_STREAM_TAG = 1
TILT_STREAM_TAG = 2
RENEWAL_STREAM_TAG = 3
