import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name='efda',
    version='0.1.0',
    description='Elastic alignment of functional data with square-root velocity functions',
    long_description=long_description,
    long_description_content_type='text/markdown',
    packages=setuptools.find_packages(),
    package_data={
        'efda': ['schemas/*.json'],
    },
    install_requires=[
        'jsonschema',
        'numpy',
        'scipy',
    ],
    entry_points={
        'console_scripts': [
            'efda=efda.efdacli:main',
        ],
    },
    python_requires='>=3.8',
    classifiers=(
        "Development Status :: 2 - Pre-Alpha",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Operating System :: OS Independent",
    )
)
