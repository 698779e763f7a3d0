"""
Configuration for the cograph toolkit.
Reads tunable budgets and defaults from the environment (or a .env file).
"""

import os

from dotenv import load_dotenv

load_dotenv()

# Search budgets
# Every exhaustive search in the toolkit counts its nodes and gives up with a
# BudgetExceededError instead of answering when it runs past these.
SEARCH_NODE_BUDGET: int = int(os.getenv("COGRAPH_SEARCH_NODE_BUDGET", "10000000"))
CHAIN_STEP_BUDGET: int = int(os.getenv("COGRAPH_CHAIN_STEP_BUDGET", "1000000"))
TERM_UNIT_LIMIT: int = int(os.getenv("COGRAPH_TERM_UNIT_LIMIT", "64"))

# Size bounds
MODULE_ORACLE_LIMIT: int = int(os.getenv("COGRAPH_MODULE_ORACLE_LIMIT", "12"))
MONOMORPHIC_ORACLE_LIMIT: int = int(os.getenv("COGRAPH_MONOMORPHIC_ORACLE_LIMIT", "7"))
MODULE_SEARCH_LIMIT: int = int(os.getenv("COGRAPH_MODULE_SEARCH_LIMIT", "256"))

# Defaults for the command line
DEFAULT_SEED: int = int(os.getenv("COGRAPH_DEFAULT_SEED", "20240229"))
OMEGA_CAP: int = int(os.getenv("COGRAPH_OMEGA_CAP", "4"))
LOG_LEVEL: str = os.getenv("LOG_LEVEL", "WARNING").upper()
