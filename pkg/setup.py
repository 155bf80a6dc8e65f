from setuptools import setup


setup(
    name='divisible',
    version='1.0',
    packages=['divisible', 'divisible.graphs', 'divisible.zerosum', 'divisible.subdivision'],
    dependency_links = [
        'https://github.com/guldfisk/yeetlong/tarball/master#egg=yeetlong-1.0',
    ],
    install_requires = [
        'yeetlong',
        'networkx>=3.1',
        'numpy',
        'sympy',
        'click',
        'pydantic>=2',
    ],
    extras_require = {
        'tests': [
            'pytest',
            'hypothesis',
        ],
    },
    entry_points = {
        'console_scripts': [
            'divisible = divisible.cli:main',
        ],
    },

)
