import sys

from trimdist.cli import main

sys.exit(main())
