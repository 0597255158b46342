# -*- coding: utf-8 -*-

'''
Tests for the spectrum container and its CSV file format
'''

import os
import tempfile
import unittest

import numpy as np

from nvmag.errors import SpectrumFormatError, ValidationError
from nvmag.spectrum import (CSV_HEADER, OdmrSpectrum, parse_spectrum_csv,
                            read_spectrum_csv, spectrum_csv,
                            write_spectrum_csv)


class TestSequenceFunctions(unittest.TestCase):

    def setUp(self):
        self.freqs = np.linspace(2.8e9, 2.9e9, 11)
        self.signal = 1 - 0.03 / (1 + ((self.freqs - 2.85e9) / 5e6) ** 2)
        self.spec = OdmrSpectrum(self.freqs, self.signal,
                                 self.signal * 1e5)

    def test_validation(self):
        self.assertRaises(ValidationError, OdmrSpectrum, [1, 2, 3], [1, 1])
        self.assertRaises(ValidationError, OdmrSpectrum, [1, 3, 2],
                          [1, 1, 1])
        self.assertRaises(ValidationError, OdmrSpectrum, [1, 2, 3],
                          [1, np.nan, 1])
        self.assertRaises(ValidationError, OdmrSpectrum, [1, 2, 3],
                          [1, 1, 1], [1, 1])
        assert len(OdmrSpectrum([], [])) == 0

    def test_csv(self):
        text = spectrum_csv(self.spec)
        lines = text.splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 12
        assert text.endswith('\n')
        back = parse_spectrum_csv(text)
        assert np.array_equal(back.freqs_hz, self.freqs)
        assert np.array_equal(back.signal, self.signal)
        assert np.array_equal(back.counts_per_s, self.signal * 1e5)

    def test_csv_without_counts(self):
        spec = OdmrSpectrum(self.freqs, self.signal)
        back = parse_spectrum_csv(spectrum_csv(spec))
        assert back.counts_per_s is None

    def test_csv_file(self):
        fh, filename = tempfile.mkstemp('.csv')
        os.close(fh)
        try:
            write_spectrum_csv(self.spec, filename)
            with open(filename, 'rb') as f:
                assert b'\r' not in f.read()
            back = read_spectrum_csv(filename)
            assert np.array_equal(back.signal, self.signal)
        finally:
            os.remove(filename)

    def test_malformed(self):
        try:
            parse_spectrum_csv('freq,signal\n1,1\n')
        except SpectrumFormatError as e:
            assert e.lineno == 1
        else:
            assert False
        cases = (
            (CSV_HEADER + '\n1,1,\n2,1\n', 3),
            (CSV_HEADER + '\n1,1,\n2,abc,\n', 3),
            (CSV_HEADER + '\n2,1,\n1,1,\n', 3),
            (CSV_HEADER + '\n1,1,\n2,inf,\n', 3))
        for text, lineno in cases:
            try:
                parse_spectrum_csv(text)
            except SpectrumFormatError as e:
                assert e.lineno == lineno
                assert str(e).startswith('line %d: ' % lineno)
            else:
                assert False
        self.assertRaises(SpectrumFormatError, parse_spectrum_csv,
                          CSV_HEADER + '\n1,1,5\n2,1,\n')
