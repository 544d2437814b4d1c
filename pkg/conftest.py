from bbqp_toolkit.test.run_tests import configure

collect_ignore = ['examples', 'docs']

configure()
