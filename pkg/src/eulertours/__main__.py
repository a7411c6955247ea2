import sys

from eulertours.cli import main

sys.exit(main())
