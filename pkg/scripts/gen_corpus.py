#!/usr/bin/env python3
"""Regenerate the corpus curve files and manifest under corpus/."""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from g2kummer.corpus import write_corpus_files

if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(__file__), "..", "corpus"
    )
    manifest = write_corpus_files(target)
    print(f"wrote {manifest}")
