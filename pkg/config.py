"""Configuration management - loads environment variables."""

import os
from dotenv import load_dotenv

load_dotenv()

# Solver Configuration
DX = float(os.getenv("RDT_DX", "0.02"))
DT = float(os.getenv("RDT_DT", "0.01"))
THETA_SCHEME = float(os.getenv("RDT_THETA_SCHEME", "0.5"))
FAR_FIELD_TOL = float(os.getenv("RDT_FAR_FIELD_TOL", "1e-12"))
STARTUP_STEPS = int(os.getenv("RDT_STARTUP_STEPS", "4"))

# max_t = MAX_T_FACTOR / lambda^2 unless given explicitly
MAX_T_FACTOR = float(os.getenv("RDT_MAX_T_FACTOR", "2000"))

# Run ledger (optional, has default in ledger.py)
LEDGER_PATH = os.getenv("RDT_LEDGER_PATH")

# Worker threads for sigma*(b) curves
THREADS = int(os.getenv("RDT_THREADS", "1"))

LOG_LEVEL = os.getenv("RDT_LOG_LEVEL", "INFO")
