from setuptools import setup, find_packages

__version__ = '0.1.0'

setup(
    name="FT-Offload-Sim",
    version=__version__,
    description='Discrete-event simulator of fault tolerant task offloading with checkpointing and replication \
                 among heterogeneous mobile devices',
    license='MIT',
    classifiers=[
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'License :: OSI Approved :: MIT License',
        'Topic :: Scientific/Engineering',
    ],
    keywords='simulation fault tolerance offloading checkpoint replication weibull',
    packages=find_packages(exclude=['tests']),
    zip_safe=False,
    platforms='any',
    python_requires='>=3.8',
    install_requires=[
        'marshmallow>=3.13',
        'numpy>=1.17',
        'scipy',
        'networkx>=2.5',
        'click>=7.0',
    ],
    setup_requires=['pytest-runner'],
    tests_require=['pytest'],
    extras_require={
        'dev': [
            'pytest',
            'coveralls',
            'coverage'
        ],
        'docs': 'sphinx'
    },
    entry_points={
        'console_scripts': [
            'ft-offload=ft_offload.cli:main',
        ],
    },
)
