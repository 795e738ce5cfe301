import sys

from fixpoint.cli import main

sys.exit(main())
