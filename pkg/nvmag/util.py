# -*- coding: utf-8 -*-
'''
    nvmag.util
    ~~~~~~~~~~

    Helper functions shared by the numerical modules and the report
    writers.

    :copyright: 2020, nvmag contributors

    :license: FreeBSD and LGPL, see license.* for more details.
'''
import math

import lxml.etree  # nosec - we configure a safe parser below
import numpy as np

from nvmag.errors import ValidationError

# Configure a safe parser which does not allow XML entity expansion
parser = lxml.etree.XMLParser(
        attribute_defaults=False,
        dtd_validation=False,
        load_dtd=False,
        no_network=True,
        recover=False,
        remove_pis=True,
        resolve_entities=False,
        huge_tree=False)


def xml_fromstring(xmlstring):
    return lxml.etree.fromstring(xmlstring, parser)  # nosec - safe parser


def xml_parse(filename):
    return lxml.etree.parse(filename, parser).getroot()  # nosec - safe parser


def xml_elem(_tag, parent=None, **kwargs):
    if parent is not None:
        return lxml.etree.SubElement(parent, _tag, **kwargs)
    return lxml.etree.Element(_tag, **kwargs)


def xml_value(parent, name, value):
    '''Append a child element holding a number (or text) to `parent`.
    '''
    elem = xml_elem(name, parent)
    if isinstance(value, (float, int, np.floating, np.integer)) \
            and not isinstance(value, bool):
        elem.text = format_float(value)
    else:
        elem.text = str(value)
    return elem


def xml_float(parent, name, default=None):
    '''Read back a number written by :func:`xml_value`.
    '''
    elem = parent.find(name)
    if elem is None or elem.text is None:
        if default is not None:
            return default
        raise ValidationError('Missing element %s' % name)
    try:
        return float(elem.text)
    except ValueError:
        raise ValidationError('Invalid number in %s (%s)' % (name, elem.text))


def format_float(value):
    '''Format a float with enough digits to read back the identical value.
    '''
    return '%.17g' % value


def parse_bool(value):
    if isinstance(value, bool):
        return value
    if value in ('true', '1', 'yes'):
        return True
    if value in ('false', '0', 'no'):
        return False
    raise ValidationError('Invalid boolean value %s' % value)


def ensure_format(val, allowed, required, allowed_values=None, defaults=None):
    '''Check a dictionary or a list of dictionaries against the allowed and
    required keys and the allowed values of specific keys. Missing keys are
    filled in from the defaults first.

    :param val:            Dictionaries to check.
    :param allowed:        Set of allowed keys.
    :param required:       Set of required keys.
    :param allowed_values: Dictionary with keys and sets of their allowed
                           values.
    :param defaults:       Dictionary with default values.
    :returns:              List of checked dictionaries.
    '''
    if not val:
        return []
    if allowed_values is None:
        allowed_values = {}
    if defaults is None:
        defaults = {}
    # Make sure that we have a list of dicts. Even if there is only one.
    if not isinstance(val, list):
        val = [val]
    for elem in val:
        if not isinstance(elem, dict):
            raise ValidationError('Invalid data (value is no dictionary)')
        for k, v in defaults.items():
            elem[k] = elem.get(k, v)
        if not set(elem.keys()) <= allowed:
            invalid = ', '.join(sorted(set(elem.keys()) - allowed))
            raise ValidationError('Data contains invalid keys (%s)' % invalid)
        if not set(elem.keys()) >= required:
            missing = ', '.join(sorted(required - set(elem.keys())))
            raise ValidationError(
                    'Data contains not all required keys (%s)' % missing)
        for k, v in allowed_values.items():
            if elem.get(k) is not None and elem[k] not in v:
                raise ValidationError('Invalid value for %s' % k)
    return val


def ensure_finite(name, *values):
    '''Raise unless every value is a finite number.
    '''
    for value in values:
        if not np.all(np.isfinite(value)):
            raise ValidationError('Non-finite value for %s (%s)'
                                  % (name, value))


def ensure_positive(name, value, allow_inf=False):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ValidationError('Invalid number for %s (%s)' % (name, value))
    if math.isnan(value) or value <= 0 or \
            (math.isinf(value) and not allow_inf):
        raise ValidationError('%s must be positive (%s)' % (name, value))
    return value


def unit_vector(vec):
    vec = np.asarray(vec, dtype=float)
    norm = np.linalg.norm(vec)
    if norm == 0:
        raise ValidationError('Cannot normalize a zero vector')
    return vec / norm


def angle_deg(a, b):
    '''Angle between two vectors in degrees, robust near 0 and 180.
    '''
    a = unit_vector(a)
    b = unit_vector(b)
    return math.degrees(math.atan2(np.linalg.norm(np.cross(a, b)),
                                   float(np.dot(a, b))))


def xml_vector(parent, name, vec, frame):
    '''Append a field vector as ``<name frame=...>`` with bx_t, by_t and
    bz_t children.
    '''
    elem = xml_elem(name, parent, frame=frame)
    for axis, value in zip(('bx_t', 'by_t', 'bz_t'), vec):
        xml_value(elem, axis, float(value))
    return elem


def xml_read_vector(parent, name):
    '''Read back a vector written by :func:`xml_vector`.

    :returns: Tuple of the component array and the frame, or None if the
        element is missing.
    '''
    elem = parent.find(name)
    if elem is None:
        return None
    vec = np.array([xml_float(elem, axis) for axis in
                    ('bx_t', 'by_t', 'bz_t')])
    return vec, elem.get('frame')
