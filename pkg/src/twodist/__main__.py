from twodist.cli import main
import sys

sys.exit(main())
