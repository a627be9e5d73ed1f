import sys

from hookcal.cli import main

sys.exit(main())
