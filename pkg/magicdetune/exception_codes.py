INVALID_CODE = -1

INVALID_ARGUMENT_CODE = 10001
RECORD_INVARIANT_CODE = 10002
ATOM_FILE_PARSE_CODE = 10003
DUPLICATE_RECORD_CODE = 10004
ATOM_FILE_NOT_FOUND_CODE = 10005

SPECIES_NOT_FOUND_CODE = 20001
CAPABILITY_CODE = 20002
UNSUPPORTED_CASE_CODE = 20003

POLE_CODE = 30001
VANISHING_NORMALIZER_CODE = 30002
SINGULAR_FORMULA_CODE = 30003
INTERNAL_CONSISTENCY_CODE = 30004

TABLE_MISMATCH_CODE = 40001

# Process exit statuses of the command line front end.
EXIT_OK = 0
EXIT_DISAGREEMENT = 1
EXIT_USAGE = 2
EXIT_NOT_FOUND = 3
EXIT_CAPABILITY = 4
