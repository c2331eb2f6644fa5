from .characters import (
    Character,
    all_characters,
    characters_dividing,
    corollary1_characters,
    lemma1_characters,
)
from .wtable import WTable, build_w, count_from_w, t_sum, twisted_profile
from .assembly import assemble, assemble_lemma1, character_sum, count_by_split

__all__ = [
    'Character',
    'WTable',
    'all_characters',
    'assemble',
    'assemble_lemma1',
    'build_w',
    'character_sum',
    'characters_dividing',
    'corollary1_characters',
    'count_by_split',
    'count_from_w',
    'lemma1_characters',
    't_sum',
    'twisted_profile',
]
