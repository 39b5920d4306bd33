"""
Application settings and configuration
"""


class Settings:
    """Application settings"""
    # Field settings
    DEFAULT_Q = 2
    MAX_Q = 16
    DEFAULT_PLACES = ("inf", "t")

    # Lambda range settings
    DEFAULT_K_MIN = 0
    DEFAULT_K_MAX = 6
    MAX_K = 12

    # Depth settings: atoms span shells [-D, D] with D = k + DEPTH_MARGIN to start
    DEPTH_MARGIN = 3
    MAX_DEPTH_STEPS = 6
    SATURATION_RUNS = 2  # consecutive equal dimensions needed

    # Class vector settings
    TAIL_CHECK_POINTS = 2  # extra points used to verify a fitted tail

    # Output settings
    DEFAULT_FORMAT = "csv"
    FORMATS = ("csv", "json")
    MODES = ("exact", "float")
    DEFAULT_PRECISION = 12
    FLOAT_TOLERANCE = 1e-9
    CSV_COLUMNS = (
        "k", "Lambda", "dimQ0", "dimQbar0", "trQ0", "trQbar0", "trQfull",
        "rhs_main", "rhs_h0", "rhs_h1", "rhs_weil",
        "gap_identity", "gap_thm31", "gap_lemma35",
    )

    # Logging settings
    LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    # Worker settings
    DEFAULT_JOBS = 1
