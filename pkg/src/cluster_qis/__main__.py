"""Allow ``python -m cluster_qis``."""

import sys

from cluster_qis.cli import main

if __name__ == '__main__':
    sys.exit(main())
