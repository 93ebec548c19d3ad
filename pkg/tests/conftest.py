from hypothesis import settings

# property tests share machine time with the heavy acceptance runs; wall-clock
# deadlines would only add flakiness there
settings.register_profile("default", deadline=None)
settings.load_profile("default")
