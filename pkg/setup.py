from pathlib import Path

from setuptools import find_packages, setup

requirements = [
    line.strip()
    for line in Path(__file__).with_name('requirements.txt').read_text().splitlines()
    if line.strip() and not line.startswith('#')
]

setup(
    name='fdhom',
    version='0.1.0',
    description='Exact homological algebra over finite-dimensional bound quiver algebras',
    packages=find_packages(exclude=['tests', 'tests.*', 'examples', 'examples.*']),
    python_requires='>=3.9',
    install_requires=requirements,
    entry_points={'console_scripts': ['fdhom=cli.main:main']},
)
