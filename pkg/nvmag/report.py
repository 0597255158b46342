# -*- coding: utf-8 -*-
'''
    nvmag.report
    ~~~~~~~~~~~~

    Report documents written by the command line. A report holds the
    command that produced it, the parameters it ran with and one record per
    file. Fit results, reconstructions, ground truth and sensitivities are
    added as extensions::

        >>> rg = ReportGenerator()
        >>> rg.command('fit')
        >>> rg.load_extension('fit')
        >>> rec = rg.add_record()
        >>> rec.id('p0_i000')
        >>> rec.fit.result(fit_report)
        >>> rg.report_file('fit.xml', pretty=True)

    Every field element carries its unit in the name. No timestamps are
    written, so reruns produce identical documents.

    :copyright: 2020, nvmag contributors

    :license: FreeBSD and LGPL, see license.* for more details.
'''

from lxml import etree  # nosec - not using this for parsing

import nvmag.version
from nvmag.errors import ValidationError
from nvmag.record import ReportRecord
from nvmag.util import ensure_format, xml_elem, xml_float, xml_parse


class ReportGenerator(object):
    '''ReportGenerator for writing run reports.
    '''

    def __init__(self):
        self.__records = []

        # required
        self.__command = None

        # optional
        self.__generator = {'value': 'nvmag',
                            'version': nvmag.version.version_str}
        self.__parameters = []  # {name*, value*}

        # Extension list:
        self.__extensions = {}

    def _create_report(self, extensions=True):
        '''Create the report xml structure containing all previously set
        fields.

        :returns: Tuple containing the report root element and the element
            tree.
        '''
        if not self.__command:
            raise ValidationError('Required fields not set (command)')
        report = xml_elem('report', command=self.__command)

        generator = xml_elem('generator', report)
        generator.text = self.__generator['value']
        if self.__generator.get('version'):
            generator.attrib['version'] = self.__generator['version']

        if self.__parameters:
            params = xml_elem('parameters', report)
            for p in self.__parameters:
                xml_elem('parameter', params, name=p['name'],
                         value=str(p['value']))

        if extensions:
            for ext in self.__extensions.values() or []:
                ext['inst'].extend_report(report)

        for record in self.__records:
            report.append(record.record_elem(extensions=extensions))

        doc = etree.ElementTree(report)
        return report, doc

    def report_str(self, pretty=False, extensions=True, encoding='UTF-8',
                   xml_declaration=True):
        '''Generates the report and returns the XML as string.

        :param pretty: If the report should be split into multiple lines and
            properly indented.
        :param extensions: Enable or disable the loaded extensions for the xml
            generation (default: enabled).
        :param encoding: Encoding used in the XML file (default: UTF-8).
        :param xml_declaration: If an XML declaration should be added to the
            output (Default: enabled).
        :returns: Bytes of the report document.
        '''
        report, doc = self._create_report(extensions=extensions)
        return etree.tostring(report, pretty_print=pretty, encoding=encoding,
                              xml_declaration=xml_declaration)

    def report_file(self, filename, extensions=True, pretty=False,
                    encoding='UTF-8', xml_declaration=True):
        '''Generates the report and writes the resulting XML to a file.

        :param filename: Name of file to write or a file-like object.
        '''
        report, doc = self._create_report(extensions=extensions)
        doc.write(filename, pretty_print=pretty, encoding=encoding,
                  xml_declaration=xml_declaration)

    def command(self, command=None):
        '''Get or set the command that produced the report, for example
        ``fit``. It is mandatory.
        '''
        if command is not None:
            self.__command = command
        return self.__command

    def generator(self, generator=None, version=None):
        '''Get or set the software that wrote the report.
        '''
        if generator is not None:
            self.__generator = {'value': generator}
            if version is not None:
                self.__generator['version'] = version
        return self.__generator

    def parameter(self, parameter=None, replace=False, **kwargs):
        '''Get or add run parameters. A parameter is a dictionary with a
        `name` and a `value`.

        Example::

            >>> rg.parameter(name='seed', value=7)
            [{'name': 'seed', 'value': 7}]
        '''
        if parameter is None and kwargs:
            parameter = kwargs
        if parameter is not None:
            if replace:
                self.__parameters = []
            self.__parameters += ensure_format(parameter,
                                               set(['name', 'value']),
                                               set(['name', 'value']))
        return self.__parameters

    def add_record(self, record=None, order='append'):
        '''Add a new record to the report. If the record argument is
        omitted a new ReportRecord is created with all loaded extensions
        registered.

        :param record: ReportRecord object to add.
        :param order: ``append`` (default) or ``prepend``.
        :returns: ReportRecord object created or passed to this function.
        '''
        if record is None:
            record = ReportRecord()

        for extname, ext in self.__extensions.items():
            try:
                record.register_extension(extname,
                                          ext['extension_class_record'])
            except ImportError:
                pass

        if order == 'prepend':
            self.__records.insert(0, record)
        else:
            self.__records.append(record)
        return record

    def record(self, record=None, replace=False):
        '''Get or set report records. Use add_record() to create records
        with the loaded extensions.

        :param record: ReportRecord or list of them.
        :returns: List of all records.
        '''
        if record is not None:
            if not isinstance(record, list):
                record = [record]
            if replace:
                self.__records = []
            for r in record:
                self.add_record(r)
        return self.__records

    def remove_record(self, record):
        '''Remove a single record. Accepts the ReportRecord or its index.
        '''
        if isinstance(record, ReportRecord):
            self.__records.remove(record)
        else:
            self.__records.pop(record)

    def load_extension(self, name):
        '''Load a report section by name. ``fit`` imports
        :mod:`nvmag.ext.fit` and binds `FitExtension` and, if present,
        `FitRecordExtension`.

        :param name: Name of the extension to load.
        '''
        if name in self.__extensions.keys():
            raise ImportError('Extension already loaded')

        extname = name[0].upper() + name[1:]
        supmod = __import__('nvmag.ext.%s' % name)
        extmod = getattr(supmod.ext, name)
        reportext = getattr(extmod, extname + 'Extension')
        try:
            recordext = getattr(extmod, extname + 'RecordExtension')
        except AttributeError:
            recordext = None
        self.register_extension(name, reportext, recordext)

    def register_extension(self, namespace, extension_class_report=None,
                           extension_class_record=None):
        '''Registers an extension by class.

        :param namespace: namespace for the extension
        :param extension_class_report: Class of the report extension.
        :param extension_class_record: Class of the record extension.
        '''
        if namespace in self.__extensions.keys():
            raise ImportError('Extension already loaded')

        extinst = extension_class_report()
        setattr(self, namespace, extinst)

        # `load_extension` registry
        self.__extensions[namespace] = {
                'inst': extinst,
                'extension_class_report': extension_class_report,
                'extension_class_record': extension_class_record,
                }

        # Try to load the extension for already existing records:
        for record in self.__records:
            try:
                record.register_extension(namespace, extension_class_record)
            except ImportError:
                pass


class LoadedRecord(object):
    '''Core fields of a record read back from a report. `element` is the
    record element, handed to the readers of the extensions.
    '''

    def __init__(self, element):
        self.element = element
        self.id = element.get('id')
        source = element.find('source')
        self.source = source.text if source is not None else None
        probe = element.find('probe')
        self.probe = probe.text if probe is not None else None
        self.current_a = None
        if element.find('current_a') is not None:
            self.current_a = xml_float(element, 'current_a')


class LoadedReport(object):

    def __init__(self, root):
        self.root = root
        self.command = root.get('command')
        generator = root.find('generator')
        self.version = generator.get('version') \
            if generator is not None else None
        self.parameters = dict(
                (p.get('name'), p.get('value'))
                for p in root.findall('parameters/parameter'))
        self.records = [LoadedRecord(r) for r in root.findall('record')]


def load_report(filename, command=None):
    '''Read a report with the hardened parser.

    :param filename: Report file.
    :param command: If given, the report must have been written by this
        command.
    :returns: LoadedReport
    '''
    try:
        root = xml_parse(filename)
    except etree.XMLSyntaxError as e:
        raise ValidationError('Cannot parse report %s (%s)' % (filename, e))
    if root.tag != 'report':
        raise ValidationError('Not a report document (%s)' % root.tag)
    report = LoadedReport(root)
    if command is not None and report.command != command:
        raise ValidationError('Expected a %s report, got %s'
                              % (command, report.command))
    return report
