import sys

from extweyl.cli import main

sys.exit(main())
