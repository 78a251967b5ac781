import sys

from achromatic_planes.cli import main

sys.exit(main())
