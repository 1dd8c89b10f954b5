""" efda module """
name = "efda"
