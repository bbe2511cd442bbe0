from setuptools import setup, find_packages

__version__ = "unknown"

# "import" __version__
for line in open("sgic/__init__.py"):
    if line.startswith("__version__"):
        exec(line)
        break

setup(
    name="sgic",
    version=__version__,
    packages=find_packages(exclude=['tests']),
    install_requires=[
        'numpy>=1.17',  # numpy.random.Generator
        'scipy>=1.7',  # scipy.stats.binomtest
    ],
    entry_points={
        'console_scripts': ['sgic=sgic.cli:main'],
    },
    author="SGIC Developers",
    description="Secure Gaussian Interference Channel Toolbox",
    long_description=open('README.rst').read(),
    license="MIT",
    keywords="information-theory interference-channel secrecy GDoF".split(),
    platforms='any',
    python_requires='>=3.7',
    classifiers=[
        "Development Status :: 3 - Alpha",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3 :: Only",
        "Topic :: Scientific/Engineering",
    ],
    zip_safe=True,
)
