from enum import Enum
from typing import List


class Method(str, Enum):
    """Ways of obtaining N_q."""
    THEOREM1 = 'theorem1'
    THEOREM2 = 'theorem2'
    THEOREM3 = 'theorem3'
    THEOREM4 = 'theorem4'
    PZC = 'pzc'
    CARLITZ_N3 = 'carlitz_n3'
    CARLITZ_N4 = 'carlitz_n4'
    ORACLE = 'oracle'

    @classmethod
    def get_closed_forms(cls) -> List['Method']:
        """Methods that evaluate a formula rather than count."""
        return [cls.THEOREM1, cls.THEOREM2, cls.THEOREM3, cls.THEOREM4,
                cls.PZC, cls.CARLITZ_N3, cls.CARLITZ_N4]


class DiagonalMethod(str, Enum):
    """Ways of obtaining N_q(0) and N_q*(0)."""
    LEMMA3 = 'lemma3'
    LEMMA4 = 'lemma4'
    COROLLARY2 = 'corollary2'
    ORACLE = 'oracle'


class BClass(str, Enum):
    """Directive selecting b by its k0-th power class."""
    POWER = 'power'
    NONPOWER = 'nonpower'
