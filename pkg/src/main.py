import logging
import sys

from dotenv import load_dotenv

from cli import QInfoCLI
from config.config import Config


def main(argv=None) -> int:
    # Load environment variables
    load_dotenv()

    try:
        config = Config()
    except ValueError as e:
        logging.basicConfig(level=logging.INFO)
        logging.error("Error loading configuration: %s", e)
        return 2

    # Configure logging
    logging.basicConfig(
        level=config.log_level,
        format='%(asctime)s %(levelname)s: %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    # Set higher logging level for noisy libraries if needed
    # logging.getLogger('qinfo.optimize').setLevel(logging.DEBUG)

    try:
        cli = QInfoCLI(config)
        return cli.run(argv)
    except Exception as e:
        logging.error("Error running command: %s", e)
        raise


if __name__ == "__main__":
    sys.exit(main())
