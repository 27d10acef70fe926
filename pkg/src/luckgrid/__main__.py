import sys

from luckgrid.cli import main

sys.exit(main())
