"""Characters of finite algebra groups G = 1 + n over finite fields.

Modules: gf (finite fields and subspaces), nilalg (nilpotent algebras),
dualforms (functionals and their kernel chains), grouporbit (group actions on
n*), cyclo (exact cyclotomic numbers), charfun (class functions in the theta
basis), analysis (constituent counts and criteria), oracle (Irr(G) at small
scale), cli.
"""

__version__ = "0.1.0"
