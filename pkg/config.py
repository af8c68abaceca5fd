import os

from dotenv import load_dotenv

load_dotenv()


class Config:
    THREADS = int(os.getenv("HHKIT_THREADS", "1"))
    BUDGET_SECONDS = float(os.getenv("HHKIT_BUDGET_SECONDS", "600"))
    GROUP_CAP = int(os.getenv("HHKIT_GROUP_CAP", "3628800"))
    SAMPLE_SEED = int(os.getenv("HHKIT_SAMPLE_SEED", "20100101"))
    LOG_LEVEL = os.getenv("HHKIT_LOG_LEVEL", "INFO")

    # Solver engines
    ALPHA_SOLVER = os.getenv("HHKIT_ALPHA_SOLVER", "branch_and_bound")
    CHI_SOLVER = os.getenv("HHKIT_CHI_SOLVER", "dsatur")

    # Graphs above this size are handed to CP-SAT when reproducing table rows
    ALPHA_BNB_VERTEX_LIMIT = int(os.getenv("HHKIT_ALPHA_BNB_VERTEX_LIMIT", "120"))

    # Distinguisher sampling
    OTHER_PAIR_SAMPLES = 10_000
    ALL_PAIRS_LIMIT = 20_000

    VERIFY_SUITES = [
        "diameter",
        "hhog",
        "subgraphs",
        "bestindybd",
        "twobigsets",
        "recursivebd",
        "tailchi",
        "s_n_embed",
        "frachom",
        "quotient",
        "aut",
        "distinguisher",
    ]

    # Published values, keyed by (r, n)
    TABLE_ALPHA = {
        (2, 4): 6,
        (2, 5): 12,
        (2, 6): 22,
        (2, 7): 37,
        (2, 8): 58,
        (3, 6): 30,
        (3, 7): 60,
        (3, 8): 105,
    }
    TABLE_CHI = {
        (2, 4): 2,
        (2, 5): 3,
        (2, 6): 4,
        (2, 7): 4,
        (3, 6): 2,
        (3, 7): 3,
    }
    TABLE_FRACTIONAL = {
        (2, 4): "2",
        (2, 5): "5/2",
        (2, 6): "30/11",
        (2, 7): "105/37",
        (2, 8): "84/29",
        (3, 6): "2",
        (3, 7): "7/3",
        (3, 8): "8/3",
    }

    # Default (r, n) grid for the metric theorems
    METRIC_GRID = [
        (2, 5),
        (2, 6),
        (2, 7),
        (2, 8),
        (2, 9),
        (3, 7),
        (3, 8),
        (3, 9),
        (4, 9),
        (4, 10),
    ]
