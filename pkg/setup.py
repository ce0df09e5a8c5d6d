from setuptools import setup

with open("README.md", "r", encoding="utf-8") as f:
    long_description = f.read()

setup(
    name="coxgame",
    version="0.4.0",
    description="Exact toric and Cox-ring computations that replay 2-ray games and Sarkisov links",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="MIT",
    package_dir={"": "src"},
    py_modules=[
        "cli",
        "config",
        "cox",
        "diagram",
        "errors",
        "game",
        "lattice",
        "log",
        "oracle",
        "pfaffian",
        "poly",
        "report",
        "scenario",
        "sing",
        "Environment",
        "Evaluator",
        "expressions",
        "Parser",
        "Scanner",
        "Token",
        "TokenType",
        "visitor",
    ],
    install_requires=["sympy>=1.12"],
    extras_require={
        "dev": ["pytest>=7.4", "flake8>=7.1.1", "pylint>=3.3.1", "black>=24.8.0"],
    },
    entry_points={
        "console_scripts": [
            "coxgame = cli:main",
        ],
    },
    python_requires=">=3.8",
    classifiers=[
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Operating System :: OS Independent",
    ],
)
