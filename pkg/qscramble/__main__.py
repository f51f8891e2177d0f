import sys

from qscramble.cli import main

sys.exit(main())
