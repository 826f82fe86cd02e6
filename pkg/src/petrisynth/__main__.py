import sys

from petrisynth.cli import main

sys.exit(main())
