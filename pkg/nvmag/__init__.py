# -*- coding: utf-8 -*-
"""
    =====
    nvmag
    =====

    Vector magnetometry with ensembles of nitrogen-vacancy centers in
    diamond addressed through a laser-written waveguide. The package
    simulates CW-ODMR spectra, fits them and reconstructs the magnetic field
    vector from the resonance pairs of three NV orientations.

    :copyright: 2020, nvmag contributors
    :license: FreeBSD and LGPL, see license.* for more details.


    -------------------
    Simulate a Spectrum
    -------------------

    Fields are FieldVectors in tesla. The crystal frame is the lab-aligned
    basis of the (110) facet::

        >>> from nvmag.spin import (FieldVector, LineShapeParams, SpinParams,
        ...                         nv_axes_for_facet, odmr_spectrum)
        >>> geom = nv_axes_for_facet('(110)')
        >>> params = SpinParams()
        >>> line = LineShapeParams(fwhm_hz=5.27e6, contrast=0.03)
        >>> b = FieldVector(2e-3, 8e-3, -5e-3)
        >>> spec = odmr_spectrum(b, geom, params, line,
        ...                      np.arange(2.5e9, 3.25e9, 0.5e6))

    ------------
    Fit the Dips
    ------------

    ::

        >>> from nvmag.fit import fit_lorentzians, pair_dips
        >>> report = fit_lorentzians(spec, 8)
        >>> pairs = pair_dips(report.dips, params.d_hz)

    `pairs` holds the resonance pairs with the largest splitting first.

    ----------------------
    Reconstruct the Vector
    ----------------------

    Tag three pairs with the orientation they belong to and intersect the
    polar cones::

        >>> from nvmag.inversion import reconstruct_vector
        >>> tagged = [pairs[0].tagged(3), pairs[1].tagged(1),
        ...           pairs[2].tagged(2)]
        >>> result = reconstruct_vector(tagged, geom, params, hint='toward')
        >>> result.b_crystal, result.triangle_diameter_deg

    B and -B produce the same spectrum, the hint selects the hemisphere.

    ------------
    Command Line
    ------------

    The same pipeline runs from a configuration file::

        $ python -m nvmag simulate --config campaign.xml --out run
        $ python -m nvmag fit run/p0_i*.csv --out run
        $ python -m nvmag reconstruct run/fit.xml --out run

    Reports are XML documents, see :mod:`nvmag.report`.
"""
