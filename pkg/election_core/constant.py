import math

# 黄金比例共轭 φ = (√5 − 1)/2
PHI = (math.sqrt(5.0) - 1.0) / 2.0

DEFAULT_ENUM_CAP = 10**7
# m 小于该值时默认使用精确有理数
EXACT_MODE_MAX_M = 2000
FLOAT_TIE_TOLERANCE = 1e-9

DEFAULT_DUMMY_BLOCK = "dummy"

# 显式物化对称实例时，可交换候选人个数上限（6! = 720 个排列）
MATERIALIZE_MAX_DUMMIES = 6
ALL_PERMUTATIONS_MAX_M = 8

# 螺旋实例默认参数
SPIRAL_DEFAULT_LAYERS = 8
SPIRAL_DEFAULT_A = 0.25
SPIRAL_DEFAULT_RESOLUTION = 1000
SPIRAL_DEFAULT_M = 1_000_000
SPIRAL_DEFAULT_DUMMY_MARGIN = 0.03
SPIRAL_DEFAULT_LAYER_DECAY = 0.03
# 窗口边界吸附到的有理网格 1/SPIRAL_GRID
SPIRAL_GRID = 10**9

MONOTONE_GAP_DEFAULT_A = 0.377
MONOTONE_GAP_DEFAULT_B = 0.552

LP_FEASIBILITY_TOL = 1e-7
LP_SIMPLEX_MAX_VARIABLES = 1000
ROUNDING_TOL = 1e-9

MANIFEST_SCHEMA_VERSION = 1

RULE_NAMES = ("greedy", "banzhaf", "random", "opt", "lp-round")
GENERATOR_NAMES = ("random", "allperm", "spiral", "monotone-gap", "core-cex", "sborda-bad", "from-cover")
LP_SOLVER_NAMES = ("auto", "simplex", "highs")
