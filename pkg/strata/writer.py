# IMPORTS
import json
import logging as lgg

import openpyxl as oxl
from openpyxl.styles import Font


# LOGGER
logger = lgg.getLogger(__name__)
logger.setLevel(lgg.DEBUG)


# GLOBAL VARIABLES
SECTIONS_ORDER = 'basis stratify resolve tilting ringel fdim ' \
                 'verify-counterexample'.split(' ')


# CLASSES
class Writer:
    """Base class of report writers; subclasses register themselves for
    the file format given as `fmt` keyword in class definition.

    Report is a json-serializable dict with keys 'strata_version', 'input',
    'seed', 'parameters', 'sections' and optionally 'cache'."""

    writers = dict()

    def __init_subclass__(cls, fmt='', **kwargs):
        if not fmt:
            raise TypeError('Required keyword argument "fmt" not found.')
        if not hasattr(cls, 'write'):
            raise AttributeError(
                'Class derived from Writer should provide write method.'
            )
        super().__init_subclass__(**kwargs)
        Writer.writers[fmt] = cls
        cls.fmt = fmt
        logger.debug(f'Writer {cls} registered for export to {fmt} format.')

    _header = dict(
        basis='Algebra basis',
        stratify='Stratification',
        resolve='Minimal projective resolutions',
        tilting='Characteristic tilting and cotilting modules',
        ringel='Ringel dual and two-step tilting module',
        fdim='Finitistic dimension',
    )
    _header['verify-counterexample'] = 'Counterexample verification'

    @staticmethod
    def ordered_sections(report):
        sections = report.get('sections', {})
        known = [s for s in SECTIONS_ORDER if s in sections]
        return known + sorted(s for s in sections if s not in known)

    @staticmethod
    def scalar(value):
        if value is None:
            return '-'
        if isinstance(value, bool):
            return 'yes' if value else 'no'
        return str(value)


class JsonWriter(Writer, fmt='json'):

    def render(self, report):
        """Canonical text: sorted keys, two spaces indent, trailing
        newline."""
        return json.dumps(report, indent=2, sort_keys=True,
                          ensure_ascii=False) + '\n'

    def write(self, dest, report):
        with open(dest, 'w', encoding='utf-8') as file:
            file.write(self.render(report))
        logger.info(f'Report exported to json file {dest}.')


class TxtWriter(Writer, fmt='txt'):

    indent = '  '

    def render(self, report):
        lines = [
            f"strata {report.get('strata_version', '')} report for "
            f"{report.get('input', '?')} (seed {report.get('seed', 0)})",
        ]
        if 'cache' in report:
            lines.append(f"cache: {report['cache']}")
        parameters = report.get('parameters', {})
        lines.append('parameters: ' + ', '.join(
            f'{k}={self.scalar(parameters[k])}' for k in sorted(parameters)
        ))
        for name in self.ordered_sections(report):
            title = self._header.get(name, name)
            lines += ['', title, '=' * len(title)]
            lines += self.block(report['sections'][name], 0)
        return '\n'.join(lines) + '\n'

    def block(self, data, depth):
        """Lines of nested dicts and lists, indented by depth."""
        pad = self.indent * depth
        lines = []
        if isinstance(data, dict):
            for key in sorted(data, key=str):
                value = data[key]
                if self.is_flat(value):
                    lines.append(f'{pad}{key}: {self.flat(value)}')
                else:
                    lines.append(f'{pad}{key}:')
                    lines += self.block(value, depth + 1)
        elif isinstance(data, list):
            for item in data:
                if self.is_flat(item):
                    lines.append(f'{pad}- {self.flat(item)}')
                else:
                    lines.append(f'{pad}-')
                    lines += self.block(item, depth + 1)
        else:
            lines.append(f'{pad}{self.scalar(data)}')
        return lines

    def is_flat(self, value):
        if isinstance(value, dict):
            return not value
        if isinstance(value, list):
            return all(self.is_flat(v) and not isinstance(v, dict)
                       for v in value)
        return True

    def flat(self, value):
        if isinstance(value, list):
            return '[' + ', '.join(self.flat(v) for v in value) + ']'
        if isinstance(value, dict):
            return '{}'
        return self.scalar(value)

    def write(self, dest, report):
        with open(dest, 'w', encoding='utf-8') as file:
            file.write(self.render(report))
        logger.info(f'Report exported to text file {dest}.')


class XlsxWriter(Writer, fmt='xlsx'):

    def write(self, dest, report):
        """Writes report to xlsx file, one sheet per section with rows of
        (key path, value)."""
        wb = oxl.Workbook()
        ws = wb.active
        ws.title = 'Overview'
        ws.append(['Input', report.get('input', '')])
        ws.append(['Version', report.get('strata_version', '')])
        ws.append(['Seed', report.get('seed', 0)])
        if 'cache' in report:
            ws.append(['Cache', report['cache']])
        parameters = report.get('parameters', {})
        for key in sorted(parameters):
            ws.append([key, self.scalar(parameters[key])])
        self.fit_columns(ws)
        for name in self.ordered_sections(report):
            ws = wb.create_sheet(title=name[:31])
            ws.append(['Key', 'Value'])
            for cell in ws[1]:
                cell.font = Font(bold=True)
            ws.freeze_panes = 'A2'
            for path, value in self.flatten(report['sections'][name]):
                ws.append([path, value])
            self.fit_columns(ws)
        wb.save(dest)
        logger.info(f'Report exported to xlsx file {dest}.')

    def flatten(self, data, prefix=''):
        """Pairs of dotted key path and cell value."""
        if isinstance(data, dict):
            if not data:
                yield prefix, '{}'
            for key in sorted(data, key=str):
                path = f'{prefix}.{key}' if prefix else str(key)
                yield from self.flatten(data[key], path)
        elif isinstance(data, list):
            if all(not isinstance(v, (dict, list)) for v in data):
                yield prefix, ', '.join(self.scalar(v) for v in data)
            else:
                for index, item in enumerate(data):
                    yield from self.flatten(item, f'{prefix}[{index}]')
        elif isinstance(data, (bool, type(None))):
            yield prefix, self.scalar(data)
        else:
            yield prefix, data

    @staticmethod
    def fit_columns(ws):
        for column in ws.columns:
            width = max(len(str(cell.value)) for cell in column) + 2
            ws.column_dimensions[column[0].column_letter].width = \
                min(width, 80)
