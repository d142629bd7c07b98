import os

from dotenv import load_dotenv

load_dotenv()

GOLDEN_DATABASE_URL = os.getenv("GOLDEN_DATABASE_URL", "sqlite:///golden/golden.db")
LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING")
DEFAULT_JOBS = int(os.getenv("DEFAULT_JOBS", "1"))
SPLIT_DEPTH = int(os.getenv("SPLIT_DEPTH", "3"))
MUTATION_SAMPLE_CAP = int(os.getenv("MUTATION_SAMPLE_CAP", "64"))
RANDOM_SEED = int(os.getenv("RANDOM_SEED", "20240101"))
INCREMENTAL_CHECK = os.getenv("INCREMENTAL_CHECK", "false").lower() in ("1", "true")
