import sys

from visco2d._cli import main

sys.exit(main())
