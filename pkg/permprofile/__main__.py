import sys

from permprofile.cli import main

sys.exit(main())
