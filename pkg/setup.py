from setuptools import setup, find_packages

setup(
    name="cvnn-cost",
    version="0.1.0",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    package_data={
        "cvnn_cost": ["data/*.json", "templates/*.j2"],
    },
    install_requires=[
        "numpy>=1.24.0",
        "pyyaml>=6.0",
        "jinja2>=3.1.0",
        "pandas>=2.0.0",
        "matplotlib>=3.7.0",
        "click>=8.1.0",
        "rich>=13.0.0",
    ],
    extras_require={
        "test": ["pytest>=7.4.0", "hypothesis>=6.80.0"],
    },
    entry_points={
        "console_scripts": [
            "cvnn-cost=cvnn_cost.cli:main",
        ],
    },
    python_requires=">=3.8",
)
