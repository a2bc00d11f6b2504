import magicdetune.exception_codes as codes


class BaseException(Exception):
    code = codes.INVALID_CODE
    message = 'BaseException'

    def __init__(self, message='', metadata=None):
        self.message = self.__class__.__name__ if not message else message
        self.metadata = metadata if metadata is not None else {}
        super().__init__(self.message)

    def __str__(self):
        return self.message


class InvalidArgumentError(BaseException):
    code = codes.INVALID_ARGUMENT_CODE


class RecordInvariantError(InvalidArgumentError):
    code = codes.RECORD_INVARIANT_CODE

    @property
    def field(self):
        return self.metadata.get('field')


class AtomFileParseError(InvalidArgumentError):
    code = codes.ATOM_FILE_PARSE_CODE

    @property
    def line(self):
        return self.metadata.get('line')


class AtomFileNotFoundError(InvalidArgumentError):
    code = codes.ATOM_FILE_NOT_FOUND_CODE


class DuplicateRecordError(InvalidArgumentError):
    code = codes.DUPLICATE_RECORD_CODE


class SpeciesNotFoundError(BaseException):
    code = codes.SPECIES_NOT_FOUND_CODE


class CapabilityError(BaseException):
    code = codes.CAPABILITY_CODE


class UnsupportedCaseError(BaseException):
    code = codes.UNSUPPORTED_CASE_CODE


class PoleError(InvalidArgumentError):
    code = codes.POLE_CODE

    @property
    def resonance(self):
        return self.metadata.get('resonance')


class VanishingNormalizerError(BaseException):
    code = codes.VANISHING_NORMALIZER_CODE


class SingularFormulaError(BaseException):
    code = codes.SINGULAR_FORMULA_CODE


class InternalConsistencyError(BaseException):
    code = codes.INTERNAL_CONSISTENCY_CODE


class TableMismatchError(BaseException):
    code = codes.TABLE_MISMATCH_CODE

    @property
    def cells(self):
        return self.metadata.get('cells', [])
