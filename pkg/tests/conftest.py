import hypothesis

hypothesis.settings.register_profile("numeric", deadline=None, max_examples=60)
hypothesis.settings.load_profile("numeric")
