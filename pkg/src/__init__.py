"""
qwlift - Hadamard quantum walks lifted to a four-state Markov chain, with the
dense reference path used to verify them.
"""
