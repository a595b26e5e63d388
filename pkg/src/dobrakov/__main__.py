import sys

from dobrakov.cli import main

sys.exit(main())
