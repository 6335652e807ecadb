from setuptools import setup, find_packages

with open('twobath/__version__.py') as fd:
    version = fd.read().split('=')[1].strip().strip("'")

with open('requirements.txt') as fd:
    requirements = [line.strip() for line in fd if line.strip() and not line.startswith('#')]

setup(
    name = "twobath",
    version = version,
    description = "Second moments of two coupled damped quantum oscillators in separate thermal baths",
    license = "Apache-2.0",
    packages = find_packages(exclude=['tests', 'tests.*']),
    python_requires = '>=3.9',
    install_requires = requirements,
    entry_points = {
        'console_scripts': ['twobath=twobath.cli:main'],
    },
    setup_requires=['pytest-runner'],
    tests_require=['pytest', 'pytest-cov', 'hypothesis', 'mpmath']
)
