# Numerical defaults. Read as ``settings.NAME`` so tests and the CLI can
# override them on the module.

# quadrature
QUAD_TOL = 1e-12
QUAD_NODES = 16
QUAD_MAX_PANELS = 4096

# quartic basis
SERIES_SWITCH = 1.0
SERIES_TERMS = 12
SCALE_THRESHOLD = 500.0

# shooting
ODE_RTOL = 1e-12
ODE_ATOL = 1e-15
ODE_MAX_STEP = 1e-2
ODE_METHOD = 'DOP853'
ODE_X_LIMIT = 6.0

# Picard series
SERIES_MAX_ORDER = 16
SERIES_PANELS = 16
SERIES_NODES = 16

# Hill determinant
HILL_MIN_MODES = 32
HILL_MARGIN = 16

# spectrum
GRID_PER_UNIT_Z = 64
MERGE_TOL = 1e-6
DOUBLE_ROOT_TOL = 1e-8
ROOT_TOL = 1e-10
CONTOUR_SAMPLES = 256
CONTOUR_MAX_DEPTH = 12
CONTOUR_MIN_RATIO = 1e-6
DISK_SAMPLES = 64
REFINE_MAX_DEPTH = 40

# asymptotics
MAX_PI_N = 300.0
