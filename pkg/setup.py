"""
Setup script for logmonoid
"""

from setuptools import setup

# Read README for long description
with open('README.md', 'r', encoding='utf-8') as f:
    long_description = f.read()

# Read requirements (runtime only; the development tools section is skipped)
with open('requirements.txt', 'r', encoding='utf-8') as f:
    requirements = []
    for line in f:
        line = line.strip()
        if line.startswith('# Development'):
            break
        if line and not line.startswith('#'):
            requirements.append(line)

setup(
    name='logmonoid',
    version='0.1.0',
    description='Monoids, Kummer homomorphisms, Kummer étale covers of log points and Γ-cohomology',
    long_description=long_description,
    long_description_content_type='text/markdown',
    packages=['src'],
    install_requires=requirements,
    python_requires='>=3.12',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.12',
        'Programming Language :: Python :: 3.13',
    ],
    keywords='monoids log-geometry kummer toric cohomology',
    entry_points={
        'console_scripts': [
            'logmonoid=src.cli:run',
        ],
    },
)
