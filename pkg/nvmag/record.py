# -*- coding: utf-8 -*-
'''
    nvmag.record
    ~~~~~~~~~~~~

    One record of a report: the result for a single input or output file.

    :copyright: 2020, nvmag contributors

    :license: FreeBSD and LGPL, see license.* for more details.
'''

from nvmag.errors import ValidationError
from nvmag.util import xml_elem, xml_value


class ReportRecord(object):
    '''ReportRecord call representing one file of a run. Its sections are
    added by the extensions loaded into the report.
    '''

    def __init__(self):
        self.__id = None
        self.__source = None
        self.__current_a = None
        self.__probe = None

        # Extension list:
        self.__extensions = {}

    def record_elem(self, extensions=True):
        '''Create a record element containing all previously set fields.

        :returns: The record element.
        '''
        if not self.__id:
            raise ValidationError('Required fields not set (id)')
        record = xml_elem('record', id=self.__id)
        if self.__source is not None:
            source = xml_elem('source', record)
            source.text = self.__source
        if self.__probe is not None:
            probe = xml_elem('probe', record)
            probe.text = self.__probe
        if self.__current_a is not None:
            xml_value(record, 'current_a', self.__current_a)

        if extensions:
            for ext in self.__extensions.values() or []:
                ext['inst'].extend_record(record)
        return record

    def id(self, id=None):
        '''Get or set the record id. It names the file the record belongs
        to, without extension, and is unique within a report.

        :param id: New id of the record.
        :returns: Id of the record.
        '''
        if id is not None:
            self.__id = id
        return self.__id

    def source(self, source=None):
        '''Get or set the file name the record was computed from or written
        to.
        '''
        if source is not None:
            self.__source = source
        return self.__source

    def current(self, current_a=None):
        '''Get or set the wire current in ampere.'''
        if current_a is not None:
            self.__current_a = float(current_a)
        return self.__current_a

    def probe(self, probe=None):
        if probe is not None:
            self.__probe = probe
        return self.__probe

    def register_extension(self, namespace, extension_class_record=None):
        '''Register a specific extension by classes to a namespace.

        :param namespace: namespace for the extension
        :param extension_class_record: Class of the record extension to load.
        '''
        if namespace in self.__extensions.keys():
            raise ImportError('Extension already loaded')
        if not extension_class_record:
            raise ImportError('No extension class')

        extinst = extension_class_record()
        setattr(self, namespace, extinst)

        # `load_extension` registry
        self.__extensions[namespace] = {
                'inst': extinst,
                'extension_class_record': extension_class_record,
                }
