""" Entry point for python -m efda """
import sys

from efda import efdacli

sys.exit(efdacli.main())
