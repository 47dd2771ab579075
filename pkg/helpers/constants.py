import os
from dotenv import load_dotenv
from scipy.constants import c as SPEED_OF_LIGHT

dotenv_path = os.path.join(os.path.dirname(__file__), '.env')

load_dotenv(dotenv_path=dotenv_path)

LOGGING_LEVEL = os.getenv("LOGGING_LEVEL", "INFO")
LOG_DIR = os.getenv("LOG_DIR", "logs")

# default worker count for Monte Carlo trials
SIM_THREADS = int(os.getenv("SIM_THREADS", "1"))
SIM_PROGRESS = os.getenv("SIM_PROGRESS", "0") == "1"

TOOL_NAME = "fmcw-isac-sim"
TOOL_VERSION = "0.1.0"

C = SPEED_OF_LIGHT

# bits simulated per worker batch in BER sweeps
BER_BATCH_BITS = 128
MIN_RAMP_SAMPLES = 16
RCS_FLOOR = 1e-12

# base configuration the HTTP service applies request overrides to
API_CONFIG = os.getenv("API_CONFIG", "configs/isl.conf")
