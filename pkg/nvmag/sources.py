# -*- coding: utf-8 -*-
'''
    nvmag.sources
    ~~~~~~~~~~~~~

    Field sources: the Biot-Savart field of a straight current-carrying wire,
    superposition of fields and field maps in the plane perpendicular to
    the wire.

    :copyright: 2020, nvmag contributors

    :license: FreeBSD and LGPL, see license.* for more details.
'''

import math

import numpy as np

from nvmag.errors import FrameError, ValidationError
from nvmag.spin import LAB, FieldVector
from nvmag.util import ensure_finite, format_float

MU_0 = 4 * math.pi * 1e-7

# 1/e^2 area of the waveguide mode in m^2
MODE_AREA_M2 = 456e-12

INFINITE = 'infinite'
SEGMENT = 'segment'


class WireSource(object):
    '''Straight wire in the lab frame.

    :param direction: Unit vector along the current.
    :param center: A point on the wire axis (m). For a finite segment this
        is its midpoint.
    :param radius_m: Conductor radius. Zero models a filament.
    :param current_a: Signed current.
    :param length_m: Segment length. None is an infinite wire.
    :param segments: Number of elements of the segment sum.
    '''

    def __init__(self, direction=(1.0, 0.0, 0.0), center=(0.0, 0.0, 0.0),
                 radius_m=0.0, current_a=0.0, length_m=None, segments=4000):
        direction = np.asarray(direction, dtype=float)
        if abs(np.linalg.norm(direction) - 1) > 1e-9:
            raise ValidationError('Wire direction must have unit norm')
        if radius_m < 0:
            raise ValidationError('Negative wire radius (%s)' % radius_m)
        if length_m is not None and length_m <= 0:
            raise ValidationError('Wire length must be positive (%s)'
                                  % length_m)
        ensure_finite('wire', direction, center, radius_m, current_a)
        self.direction = direction
        self.center = np.asarray(center, dtype=float)
        self.radius_m = float(radius_m)
        self.current_a = float(current_a)
        self.length_m = length_m
        self.segments = int(segments)

    @property
    def model(self):
        return INFINITE if self.length_m is None else SEGMENT

    def with_current(self, current_a):
        return WireSource(self.direction, self.center, self.radius_m,
                          current_a, self.length_m, self.segments)


class FieldMap(object):
    '''Lab-frame field sampled on a y-z grid at fixed x.
    `vectors` has shape (len(ys), len(zs), 3).
    '''

    def __init__(self, ys_m, zs_m, vectors, x_m=0.0):
        self.ys_m = np.asarray(ys_m, dtype=float)
        self.zs_m = np.asarray(zs_m, dtype=float)
        for name, grid in (('y', self.ys_m), ('z', self.zs_m)):
            if grid.ndim != 1 or np.any(np.diff(grid) <= 0):
                raise ValidationError('%s grid is not strictly increasing'
                                      % name)
        self.vectors = np.asarray(vectors, dtype=float)
        if self.vectors.shape != (len(self.ys_m), len(self.zs_m), 3):
            raise ValidationError('Vector count does not match node count')
        self.x_m = x_m

    def at(self, iy, iz):
        return FieldVector.from_array(self.vectors[iy, iz], LAB)

    def magnitudes(self):
        return np.linalg.norm(self.vectors, axis=2)


def _radial(src, points):
    rel = points - src.center
    along = rel.dot(src.direction)
    rho = rel - along[:, None] * src.direction
    return along, rho, np.linalg.norm(rho, axis=1)


def _infinite_field(src, points):
    along, rho, r = _radial(src, points)
    if src.radius_m == 0 and np.any(r == 0):
        raise ValidationError('Point lies on the wire axis')
    out = np.zeros_like(points)
    hit = r > 0
    if not np.any(hit):
        return out
    rhat = rho[hit] / r[hit][:, None]
    outside = np.maximum(r[hit], src.radius_m)
    mag = MU_0 * src.current_a / (2 * math.pi * outside)
    inside = r[hit] < src.radius_m
    mag[inside] *= r[hit][inside] / src.radius_m
    out[hit] = mag[:, None] * np.cross(src.direction, rhat)
    return out


def _segment_field(src, points):
    '''Discretised Biot-Savart sum over a finite straight segment.'''
    along, rho, r = _radial(src, points)
    if src.radius_m == 0 and np.any(r == 0):
        raise ValidationError('Point lies on the wire axis')
    n = src.segments
    edges = np.linspace(-0.5 * src.length_m, 0.5 * src.length_m, n + 1)
    mids = 0.5 * (edges[1:] + edges[:-1])
    dl = src.direction * (src.length_m / n)
    out = np.zeros_like(points)
    for k, p in enumerate(points):
        sep = p - (src.center + mids[:, None] * src.direction)
        dist = np.linalg.norm(sep, axis=1)
        # Filament field, scaled inside the conductor like the closed form
        dist = np.maximum(dist, 1e-300)
        contrib = np.cross(dl, sep) / dist[:, None] ** 3
        out[k] = MU_0 * src.current_a / (4 * math.pi) * contrib.sum(axis=0)
        if r[k] < src.radius_m:
            out[k] *= (r[k] / src.radius_m) ** 2
    return out


def wire_field_array(src, points):
    '''Vectorized :func:`wire_field` returning an (N, 3) array in tesla.
    '''
    points = np.atleast_2d(np.asarray(points, dtype=float))
    ensure_finite('point', points)
    if src.model == INFINITE:
        return _infinite_field(src, points)
    return _segment_field(src, points)


def wire_field(src, point):
    '''Field of the wire at one lab-frame point (m).

    :returns: FieldVector in the lab frame.
    '''
    return FieldVector.from_array(wire_field_array(src, point)[0], LAB)


def field_map(src, ys_m, zs_m, x_m=0.0):
    '''Evaluate the wire field on every node of a y-z grid.
    '''
    ys_m = np.asarray(ys_m, dtype=float)
    zs_m = np.asarray(zs_m, dtype=float)
    yy, zz = np.meshgrid(ys_m, zs_m, indexing='ij')
    points = np.column_stack([np.full(yy.size, x_m), yy.ravel(),
                              zz.ravel()])
    vectors = wire_field_array(src, points).reshape(len(ys_m), len(zs_m), 3)
    return FieldMap(ys_m, zs_m, vectors, x_m)


def field_map_csv(fmap):
    lines = ['y_m,z_m,bx_t,by_t,bz_t']
    for iy, y in enumerate(fmap.ys_m):
        for iz, z in enumerate(fmap.zs_m):
            values = [y, z] + list(fmap.vectors[iy, iz])
            lines.append(','.join(format_float(v) for v in values))
    return '\n'.join(lines) + '\n'


def write_field_map_csv(fmap, filename):
    with open(filename, 'w', newline='\n') as fh:
        fh.write(field_map_csv(fmap))


def superpose(fields):
    '''Component-wise sum of fields given in one frame.
    '''
    fields = list(fields)
    if not fields:
        raise ValidationError('Nothing to superpose')
    frames = set(f.frame for f in fields)
    if len(frames) > 1:
        raise FrameError('Cannot superpose fields of frames %s'
                         % ', '.join(sorted(frames)))
    total = np.sum([f.vector for f in fields], axis=0)
    return FieldVector.from_array(total, fields[0].frame)


class FootprintSpread(object):
    '''Field magnitude statistics over the waveguide mode footprint.'''

    def __init__(self, center, mean_t, min_t, max_t, std_t, radius_m):
        self.center = center
        self.mean_t = mean_t
        self.min_t = min_t
        self.max_t = max_t
        self.std_t = std_t
        self.radius_m = radius_m


def footprint_spread(src, y_m, z_m, area_m2=MODE_AREA_M2, x_m=0.0,
                     samples=41):
    '''Spread of |B| over a disc of the given area centred at (y, z) in the
    plane perpendicular to the wire.
    '''
    if area_m2 <= 0:
        raise ValidationError('Mode area must be positive (%s)' % area_m2)
    radius = math.sqrt(area_m2 / math.pi)
    offsets = np.linspace(-radius, radius, samples)
    dy, dz = np.meshgrid(offsets, offsets, indexing='ij')
    inside = dy ** 2 + dz ** 2 <= radius ** 2
    points = np.column_stack([np.full(inside.sum(), x_m),
                              y_m + dy[inside], z_m + dz[inside]])
    if src.radius_m == 0:
        _, _, r = _radial(src, points)
        points = points[r > 0]
    mags = np.linalg.norm(wire_field_array(src, points), axis=1)
    center = wire_field(src, (x_m, y_m, z_m))
    return FootprintSpread(center, float(mags.mean()), float(mags.min()),
                           float(mags.max()), float(mags.std()), radius)
