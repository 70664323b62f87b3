import sys
from dotenv import load_dotenv

# 1. Load environment variables from .env file FIRST.
load_dotenv()

# 2. NOW, it's safe to import the rest of the application components;
#    SolverConfig.from_env() and the log level read the environment.
from cli.cli import run_command

if __name__ == "__main__":
    sys.exit(run_command(sys.argv[1:]))
