import platform
import sys

import numpy
import scipy

from . import __version__


def versions():
    return [
        ("visco2d", __version__),
        ("numpy", numpy.__version__),
        ("scipy", scipy.__version__),
        ("Python Version", platform.python_version()),
        ("Python Implementation", platform.python_implementation()),
        ("OS", platform.platform()),
    ]


def version_lines():
    lines = ["INSTALLED VERSIONS", "------------------"]
    lines.extend("{}: {}".format(k, v) for k, v in versions())
    return lines


def print_versions(file=None):
    file = file or sys.stdout
    print(file=file)
    for line in version_lines():
        print(line, file=file)


if __name__ == "__main__":
    print_versions()
