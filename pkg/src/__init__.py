"""
nqcount - exact solution counts for (a_1 x_1^m_1 + ... + a_n x_n^m_n)^k = b x_1^k_1 ... x_n^k_n over F_q.
"""
