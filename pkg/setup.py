#!/usr/bin/env python
# -*- coding: utf-8 -*-


from setuptools import find_packages, setup


with open('README.md') as readme_file:
    readme = readme_file.read()

with open('HISTORY.rst') as history_file:
    history = history_file.read().replace('.. :changelog:', '')

setup(
    name='lir_lab',
    version='0.1.0',
    description="Numerical checks of local increasing regularity estimates "
                "for elliptic operators on model manifolds",
    long_description=readme + '\n\n' + history,
    author="The lir_lab Authors",
    packages=find_packages(exclude=['tests', 'tests.*']),
    include_package_data=True,
    install_requires=['numpy>=1.22', 'scipy>=1.12', 'matplotlib>=3.5',
                      'pyparsing>=3.0'],
    python_requires='>=3.8',
    license="http://www.apache.org/licenses/LICENSE-2.0",
    zip_safe=False,
    keywords='lir_lab elliptic sobolev manifold',
    entry_points={
        'console_scripts': ['lir-lab=lir_lab.cli.main:main'],
    },
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    tests_require=['pytest', 'hypothesis'],
    extras_require={
        'test': ['pytest', 'hypothesis'],
        'docs': ['sphinx', 'sphinx_rtd_theme'],
    }
)
