import os
from dotenv import load_dotenv

load_dotenv()


class Config:
    """Configuration settings"""
    # Budgets
    BUDGET_MB: int = int(os.getenv("PILAB_BUDGET_MB", "2048"))
    MAX_N_ALGEBRA: int = int(os.getenv("PILAB_MAX_N_ALGEBRA", "8"))
    MAX_N_LARGE: int = int(os.getenv("PILAB_MAX_N_LARGE", "6"))
    MAX_N_ENVELOPE: int = int(os.getenv("PILAB_MAX_N_ENVELOPE", "6"))
    SMALL_ALGEBRA_DIM: int = 3
    INT64_BYTES_PER_ENTRY: int = 24
    OBJECT_BYTES_PER_ENTRY: int = 40

    # Arithmetic
    EXACT_MAX_N: int = int(os.getenv("PILAB_EXACT_MAX_N", "5"))
    PRIME_BITS: int = int(os.getenv("PILAB_PRIME_BITS", "62"))
    SEED: int = int(os.getenv("PILAB_SEED", "20131"))

    # Worker pool
    JOBS: int = int(os.getenv("PILAB_JOBS", "1"))

    # Reports
    ROOT_DIGITS: int = 6
    TABLE_TOP_MULTIPLICITIES: int = 10

    # Random check suites
    TILDE_SAMPLES: int = 500
    TILDE_MAX_N: int = 6
    KOSZUL_SAMPLES: int = 1000
    KOSZUL_MAX_N: int = 6

    SUITES = ["hooks", "duality", "tilde", "bounds", "oracle"]
    MODES = ["ordinary", "graded", "envelope", "envelope-graded"]


config = Config()
