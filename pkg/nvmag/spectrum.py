# -*- coding: utf-8 -*-
'''
    nvmag.spectrum
    ~~~~~~~~~~~~~~

    Frequency-sampled ODMR spectra and their CSV file format.

    The file format is fixed: a header line ``freq_hz,signal,counts_per_s``
    followed by one line per sample, LF line endings and floats written with
    17 significant digits. The rate column may be empty.

    :copyright: 2020, nvmag contributors

    :license: FreeBSD and LGPL, see license.* for more details.
'''

import numpy as np

from nvmag.errors import SpectrumFormatError, ValidationError
from nvmag.util import format_float

CSV_HEADER = 'freq_hz,signal,counts_per_s'


class OdmrSpectrum(object):
    '''Normalized photoluminescence sampled on a strictly increasing
    frequency grid.

    :param freqs_hz: Sample frequencies in Hz.
    :param signal: Normalized PL per sample (off resonance is 1).
    :param counts_per_s: Optional raw photon rate per sample.
    '''

    def __init__(self, freqs_hz, signal, counts_per_s=None):
        freqs_hz = np.asarray(freqs_hz, dtype=float)
        signal = np.asarray(signal, dtype=float)
        if freqs_hz.ndim != 1 or signal.shape != freqs_hz.shape:
            raise ValidationError('Frequency and signal arrays differ in '
                                  'shape (%s, %s)' % (freqs_hz.shape,
                                                      signal.shape))
        if not np.all(np.isfinite(freqs_hz)) or \
                not np.all(np.isfinite(signal)):
            raise ValidationError('Spectrum contains non-finite values')
        if np.any(np.diff(freqs_hz) <= 0):
            raise ValidationError('Frequency grid is not strictly increasing')
        if counts_per_s is not None:
            counts_per_s = np.asarray(counts_per_s, dtype=float)
            if counts_per_s.shape != freqs_hz.shape:
                raise ValidationError('Count rate array differs in shape')
        self.__freqs = freqs_hz
        self.__signal = signal
        self.__counts = counts_per_s

    @property
    def freqs_hz(self):
        return self.__freqs

    @property
    def signal(self):
        return self.__signal

    @property
    def counts_per_s(self):
        return self.__counts

    def __len__(self):
        return len(self.__freqs)

    def __repr__(self):
        if len(self):
            return 'OdmrSpectrum(%d points, %.6g..%.6g Hz)' % (
                    len(self), self.__freqs[0], self.__freqs[-1])
        return 'OdmrSpectrum(empty)'


def spectrum_csv(spec):
    '''Render a spectrum in the CSV file format.

    :param spec: OdmrSpectrum to render.
    :returns: The file content as string.
    '''
    lines = [CSV_HEADER]
    counts = spec.counts_per_s
    for i, (f, s) in enumerate(zip(spec.freqs_hz, spec.signal)):
        c = '' if counts is None else format_float(counts[i])
        lines.append('%s,%s,%s' % (format_float(f), format_float(s), c))
    return '\n'.join(lines) + '\n'


def write_spectrum_csv(spec, filename):
    with open(filename, 'w', newline='\n') as fh:
        fh.write(spectrum_csv(spec))


def parse_spectrum_csv(text):
    '''Parse the content of a spectrum CSV file.

    :param text: File content.
    :returns: OdmrSpectrum
    :raises SpectrumFormatError: naming the first offending line.
    '''
    lines = text.split('\n')
    if lines and lines[-1] == '':
        lines.pop()
    if not lines or lines[0].strip('\r') != CSV_HEADER:
        raise SpectrumFormatError('expected header %s' % CSV_HEADER, 1)
    freqs, signal, counts = [], [], []
    for lineno, line in enumerate(lines[1:], 2):
        fields = line.rstrip('\r').split(',')
        if len(fields) != 3:
            raise SpectrumFormatError('expected 3 fields, found %d'
                                      % len(fields), lineno)
        try:
            freqs.append(float(fields[0]))
            signal.append(float(fields[1]))
            counts.append(float(fields[2]) if fields[2] else None)
        except ValueError as e:
            raise SpectrumFormatError(str(e), lineno)
        if not (np.isfinite(freqs[-1]) and np.isfinite(signal[-1])):
            raise SpectrumFormatError('non-finite value', lineno)
        if len(freqs) > 1 and freqs[-1] <= freqs[-2]:
            raise SpectrumFormatError('frequency not increasing', lineno)
    if any(c is None for c in counts):
        if not all(c is None for c in counts):
            raise SpectrumFormatError('count rate column partially empty')
        counts = None
    return OdmrSpectrum(freqs, signal, counts)


def read_spectrum_csv(filename):
    with open(filename, 'r', newline='') as fh:
        return parse_spectrum_csv(fh.read())
