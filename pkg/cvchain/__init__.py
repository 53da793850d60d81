"""cvchain library for one-way network nonlocality with continuous-variable optics."""
