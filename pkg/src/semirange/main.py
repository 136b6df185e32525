from semirange_cli.main import SemiRangeCLI
from semirange_core.configs import settings
from semirange_core.logging_config import setup_logging


def start():
    """Logic for starting the code"""
    setup_logging(settings.log_level)
    cli_app = SemiRangeCLI(settings)

    cli_app()


if __name__ == "__main__":
    start()
