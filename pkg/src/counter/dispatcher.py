"""Pick the closed forms that apply to an instance, evaluate them, and compare with the oracle."""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from ..eqmodel import ApplicabilityReport, DerivedParams, EquationSpec, Method, classify, derive_params
from ..exceptions import ClosedFormMismatchError
from .oracle import oracle_count
from .theorems import evaluate

logger = logging.getLogger(__name__)

NATIVE_LIMIT = 1 << 63


def _number(value: Optional[int]) -> Optional[str]:
    return None if value is None else str(value)


@dataclass
class CountReport:
    """Everything known about N_q for one instance."""
    spec: EquationSpec
    params: DerivedParams
    applicability: ApplicabilityReport
    closed_form_values: Dict[Method, int] = field(default_factory=dict)
    oracle_value: Optional[int] = None

    @property
    def closed_form_methods(self) -> List[Method]:
        return list(self.closed_form_values)

    @property
    def closed_form_method(self) -> Optional[str]:
        """Label of the closed forms used, '+'-joined when several agree."""
        if not self.closed_form_values:
            return None
        return '+'.join(method.value for method in self.closed_form_values)

    @property
    def closed_form_value(self) -> Optional[int]:
        if not self.closed_form_values:
            return None
        return next(iter(self.closed_form_values.values()))

    @property
    def value(self) -> Optional[int]:
        """Best available N_q: the closed form, else the oracle."""
        cf = self.closed_form_value
        return cf if cf is not None else self.oracle_value

    @property
    def agreement(self) -> Optional[bool]:
        if self.closed_form_value is None or self.oracle_value is None:
            return None
        return self.closed_form_value == self.oracle_value

    def to_dict(self) -> Dict:
        """JSON-ready dict; counts are decimal strings, with native ints alongside below 2^63."""
        data = {
            'spec': self.spec.to_dict(),
            'params': self.params.to_dict(),
            'applicability': self.applicability.to_dict(),
            'applicable_methods': [m.value for m in self.applicability.applicable_methods()],
            'closed_form_method': self.closed_form_method,
            'closed_form_value': _number(self.closed_form_value),
            'closed_form_values': {m.value: str(v) for m, v in self.closed_form_values.items()},
            'oracle_value': _number(self.oracle_value),
            'agreement': self.agreement,
        }
        for key in ('closed_form_value', 'oracle_value'):
            raw = getattr(self, key)
            if raw is not None and abs(raw) < NATIVE_LIMIT:
                data[f'{key}_native'] = raw
        return data


def closed_forms(spec: EquationSpec, dp: DerivedParams,
                 report: ApplicabilityReport) -> Dict[Method, int]:
    """Evaluate every applicable closed form; they must all agree."""
    values: Dict[Method, int] = {}
    for method in report.applicable_methods():
        values[method] = evaluate(method, spec, dp)
    if len(set(values.values())) > 1:
        detail = ', '.join(f"{m.value}={v}" for m, v in values.items())
        logger.error(f"Closed forms disagree for {spec.to_dict()}: {detail}")
        raise ClosedFormMismatchError(f"Closed forms disagree: {detail}")
    return values


def dispatch(spec: EquationSpec, run_oracle: bool = True,
             naive_limit: Optional[int] = None, crosscheck_naive: bool = False) -> CountReport:
    """Derive parameters, classify, evaluate the applicable closed forms and optionally the oracle."""
    dp = derive_params(spec)
    report = classify(spec, dp)
    result = CountReport(spec=spec, params=dp, applicability=report)
    result.closed_form_values = closed_forms(spec, dp, report)

    if run_oracle:
        result.oracle_value = oracle_count(
            spec, naive_limit=naive_limit, crosscheck_naive=crosscheck_naive)
        if result.agreement is False:
            logger.error(
                f"{result.closed_form_method} gives {result.closed_form_value} "
                f"but the oracle counts {result.oracle_value} for {spec.to_dict()}")

    logger.debug(
        f"Dispatch q={spec.q}, n={spec.n}: method={result.closed_form_method}, "
        f"closed form={result.closed_form_value}, oracle={result.oracle_value}")
    return result
