import sys

from vrkbs.cli import main

sys.exit(main())
