import sys

from senate_power.cli import main

sys.exit(main())
