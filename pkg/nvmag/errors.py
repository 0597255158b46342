# -*- coding: utf-8 -*-
'''
    nvmag.errors
    ~~~~~~~~~~~~

    Exception hierarchy. Every error carries the process exit code the
    command line uses for it.

    :copyright: 2020, nvmag contributors

    :license: FreeBSD and LGPL, see license.* for more details.
'''


class NvmagError(Exception):
    '''Base class of all errors raised by nvmag.
    '''
    exit_code = 1


class ValidationError(NvmagError, ValueError):
    '''Raised for inputs violating a documented precondition.
    '''
    exit_code = 2


class FrameError(ValidationError):
    '''Raised when vectors of different reference frames are combined.
    '''


class SpectrumFormatError(ValidationError):
    '''Raised for malformed spectrum files. Carries the offending line.
    '''

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = 'line %d: %s' % (lineno, message)
        super(SpectrumFormatError, self).__init__(message)
        self.lineno = lineno


class NumericalError(NvmagError, ArithmeticError):
    '''Raised when a computation has no admissible numerical result.
    '''
    exit_code = 3


class ConvergenceError(NumericalError):
    '''Raised when an iterative fit stops without converging. The best
    parameters found so far are kept in `result`.
    '''

    def __init__(self, message, result=None):
        super(ConvergenceError, self).__init__(message)
        self.result = result


class IntersectionError(NumericalError):
    '''Raised when two cone constraints cannot intersect.

    :param pair: Indices of the offending cones.
    :param deficit_deg: Angle in degrees by which they miss each other.
    '''

    def __init__(self, message, pair=None, deficit_deg=None):
        super(IntersectionError, self).__init__(message)
        self.pair = pair
        self.deficit_deg = deficit_deg
