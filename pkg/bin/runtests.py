from test.unit.strata_test import *
from test.unit.cli_test import *

if __name__ == '__main__':
    unittest.main()
