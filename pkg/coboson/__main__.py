# License: MIT

import sys

from coboson.cli import main


if __name__ == '__main__':
    sys.exit(main())
