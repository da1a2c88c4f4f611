import os
import sys

sys.path.append(os.path.join(os.path.dirname(os.path.abspath(__file__)), "backend"))

from core.config import configure_logging  # noqa: E402
from cli import cli_dispatch  # noqa: E402


if __name__ == "__main__":
    configure_logging()
    sys.exit(cli_dispatch(sys.argv[1:]))
