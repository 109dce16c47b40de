from test.unit.extraction.quiver_parser_test import *
from test.unit.extraction.path_algebra_test import *
from test.unit.extraction.extraction_test import *
from test.unit.linalg_test import *
from test.unit.algebra_test import *
from test.unit.modules_test import *
from test.unit.decomposition_test import *
from test.unit.homology_test import *
from test.unit.stratification_test import *
from test.unit.tilting_test import *
from test.unit.ringel_test import *
from test.unit.duality_test import *
from test.unit.fdim_test import *
from test.unit.writer_test import *
from test.unit.cache_test import *
from test.unit.strata_test import *
from test.unit.cli_test import *

if __name__ == '__main__':
    unittest.main()
