# -*- coding: utf-8 -*-
"""
    nvmag.ext
    ~~~~~~~~~

    Report sections loaded with ReportGenerator.load_extension.

    :copyright: 2020, nvmag contributors

    :license: FreeBSD and LGPL, see license.* for more details.
"""
