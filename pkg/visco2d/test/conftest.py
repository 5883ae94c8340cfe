import pytest


def pytest_addoption(parser):
    parser.addoption("--acceptance", action="store_true", default=False,
                     help="run the desk-scale acceptance experiments")


def pytest_configure(config):
    config.addinivalue_line("markers",
                            "acceptance: desk-scale run, minutes per test")


def pytest_collection_modifyitems(config, items):
    if config.getoption("acceptance"):
        return
    skip = pytest.mark.skip(reason="needs --acceptance")
    for item in items:
        if "acceptance" in item.keywords:
            item.add_marker(skip)


def pytest_report_header(config):
    if config.getoption("acceptance"):
        return "acceptance experiments: on"
