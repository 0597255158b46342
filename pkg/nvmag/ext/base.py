# -*- coding: utf-8 -*-
'''
    nvmag.ext.base
    ~~~~~~~~~~~~~~

    Basic report extension which does nothing but provides all necessary
    methods.

    :copyright: 2020, nvmag contributors

    :license: FreeBSD and LGPL, see license.* for more details.
'''


class BaseExtension(object):
    '''Basic ReportGenerator extension.
    '''
    def extend_report(self, report):
        '''Extend the report xml structure containing all previously set
        fields.

        :param report: The report root element.
        :returns: The report root element.
        '''
        return report


class BaseRecordExtension(object):
    '''Basic ReportRecord extension.
    '''
    def extend_record(self, record):
        '''Extend a record element.

        :param record: The record element.
        :returns: The record element.
        '''
        return record
