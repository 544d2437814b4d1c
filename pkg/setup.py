from setuptools import setup, find_packages
import os

setup(
    name='bbqp-toolkit',
    version='0.1.0',
    description='Average-based heuristics, exact oracles and instance tools for the bipartite boolean quadratic programming problem',
    long_description=open(os.path.join(os.path.dirname(__file__), 'README.txt')).read(),
    packages=find_packages(exclude=['docs']),
    package_data={
        'bbqp_toolkit': [
            'templates/bbqp_toolkit/*',
            'tests/golden/*',
        ]
    },
    classifiers=[
        'Development Status :: 4 - Beta',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Framework :: Django',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    test_suite = "bbqp_toolkit.test.run_tests.run_tests",
    include_package_data=True,
    zip_safe=False,
    python_requires='>=3.8',
    install_requires=['Django>=3.2', 'numpy>=1.20', 'PuLP>=2.9'],
    entry_points={
        'console_scripts': [
            'bbqp = bbqp_toolkit.cli:main',
        ],
    },
)
