from setuptools import setup, find_packages

with open("README.md", mode="r", encoding="utf-8") as readme_file:
    readme = readme_file.read()

optional_packages = {
    "test" : ['pytest>=7.0']
}

setup(
    name="diophlab",
    version="0.1.0",
    description="An exact-arithmetic laboratory for Diophantine approximation exponents",
    long_description=readme,
    long_description_content_type="text/markdown",
    license="Apache License 2.0",
    packages=find_packages(exclude=["tests", "tests.*"]),
    python_requires='>=3.8',
    install_requires=[
        'tqdm',
        'numpy',
        'sympy>=1.12',
        'mpmath>=1.3'
    ],
    extras_require = optional_packages,
    entry_points={
        "console_scripts": ["diophlab=diophlab.harness.cli:main"]
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: Apache Software License",
        "Programming Language :: Python :: 3.8",
        "Topic :: Scientific/Engineering :: Mathematics"
    ],
    keywords="Diophantine approximation continued fractions geometry of numbers successive minima LLL"
)
