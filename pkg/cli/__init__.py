"""
fdhom Command Line

The .fdh input language, the task runner and report rendering behind the
`fdhom` command.
"""

__version__ = "0.1.0"

from cli.parser import InputDocument, format_document, parse
from cli.runner import RunOptions, TaskReport, exit_code, run
from cli.workspace import Workspace

__all__ = [
    'InputDocument',
    'RunOptions',
    'TaskReport',
    'Workspace',
    'exit_code',
    'format_document',
    'parse',
    'run',
]
