import sys

from deltaxai.cli import main

sys.exit(main())
