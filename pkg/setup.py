from setuptools import setup, find_packages
from strata import strata

with open("README.md", 'r') as readme:
    long_desc = readme.read()

setup(
    name='strata',
    version=strata.__version__,
    description="stratification, tilting modules and finitistic dimension "
                "of finite dimensional algebras given by quivers with "
                "relations",
    long_description=long_desc,
    long_description_content_type='text/markdown',
    author=strata.__author__,
    packages=find_packages(exclude=['test', 'test.*']),
    install_requires=['numpy', 'openpyxl', 'galois', 'sympy'],
    scripts=['bin/strata'],
    entry_points={'console_scripts': ['strata=strata.cli:main']},
    package_data={'strata': ['fixtures/*.qar']}
)
