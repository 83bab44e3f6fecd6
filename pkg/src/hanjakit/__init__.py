"""hanjakit: self-hostable toolkit for AI-assisted processing of Korean
historical documents written in Hanja.

Pipeline stages: punctuation restoration, named entity recognition, and
machine translation, backed by pluggable model backends, plus an
interactive glossary, annotation persistence, an HTTP gateway, and a
batch CLI.
"""

__version__ = "0.1.0"
