import os
from pathlib import Path

# Base paths
BASE_DIR = Path(__file__).parent
CACHE_DIR = Path(os.getenv('SOERGEL_CACHE_DIR', BASE_DIR / 'cache'))

# Cache format; entries written with another version are ignored
CACHE_VERSION = 3

# Tie-breaking rule of braid paths and canonical words; part of every datum hash
BRAID_PATH_VERSION = 'bfs-position-pair-v1'

# Execution
DEFAULT_JOBS = int(os.getenv('SOERGEL_JOBS', '1'))
DEFAULT_REGION_MAX_LENGTH = None

# Seed of the evaluation point that cross-checks graded ranks
RANK_CHECK_SEED = 1729

# Logging
LOG_LEVEL = os.getenv('SOERGEL_LOG_LEVEL', 'WARNING')
LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_THEORY_VIOLATION = 3

# Commands and output formats
COMMANDS = ['kl', 'leaves', 'projector', 'character', 'badprimes', 'verify']
OUTPUT_FORMATS = ['json', 'tsv', 'text']

# Named Cartan types accepted by --type
NAMED_TYPES_HELP = (
    "A<n>, B<n>, C<n>, D<n> (n>=4), G2, F4, affine A~<n> (or Ã<n>), "
    "products joined by 'x' such as A1xA1"
)

# Primes tried by `verify --mod-p` when none are given
DEFAULT_VERIFY_PRIMES = [3, 5, 7]

# Fixed TSV columns
TSV_COLUMNS = {
    'kl': ['x', 'y', 'polynomial'],
    'leaves': ['word', 'i', 'j', 'target', 'degree'],
    'badprimes': ['x', 'z', 'det', 'primes'],
    'character': ['x', 'rank'],
    'projector': ['index', 'double_leaf', 'coefficient'],
    'verify': ['check', 'subject', 'passed', 'detail'],
}
