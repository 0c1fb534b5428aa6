import sys

from rankext.main import main

sys.exit(main())
