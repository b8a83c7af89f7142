"""
Certification Job Module for amscheme
Handles a complete certification run: validation, exclusion sets, certification and verification
"""
import logging
import uuid
from datetime import datetime, timezone
from typing import Any, Dict, FrozenSet, Optional, Sequence, Tuple, Union

from amt_engine import (
    AMTInput,
    AMTReport,
    CertificationError,
    apply_suggestions,
    certify,
    hamming_certify,
    suggest_exclusions,
)
from block_code import BlockCode, CodeError, EnumerationCapError, EnumerationSettings
from design_verify import DEFAULT_MAX_SUBSETS, DesignError
from extension import Composition
from interpolation import InterpolationError
from utils.validators import validate_base_vertex

logger = logging.getLogger(__name__)

AUTO = 'auto'
METHODS = ('general', 'hamming', 'auto')
ExclusionSpec = Union[str, Sequence[Composition], None]


class CertificationJob:
    """One certification of a code, with the exclusion sets resolved and the outcome recorded"""

    def __init__(
        self,
        code: BlockCode,
        K: ExclusionSpec = None,
        L: ExclusionSpec = None,
        target: Optional[int] = None,
        base: Optional[Sequence[int]] = None,
        method: str = 'auto',
        verify: bool = False,
        settings: Optional[EnumerationSettings] = None,
        max_subsets: int = DEFAULT_MAX_SUBSETS,
        run_config: Optional[Dict[str, Any]] = None,
    ):
        """
        Initialize a certification job

        Args:
            code: The code to certify
            K: Compositions of C known to be designs, or 'auto' for the suggested ones;
               for the hamming method, compositions of length-1 (Hamming weights)
            L: Compositions of the dual whose classes are weakly balanced, or 'auto'
            target: t to certify; None asks for the largest
            base: Base vertex; None uses the default (zero word for additive codes)
            method: 'general', 'hamming' (1-class schemes) or 'auto'
            verify: Check every claimed design exhaustively
            settings: Enumeration settings
            max_subsets: Guard for the exhaustive check
            run_config: Resolved configuration echoed into the report
        """
        self.job_id = str(uuid.uuid4())
        self.code = code
        self.K = K
        self.L = L
        self.target = target
        self.base = tuple(base) if base is not None else None
        self.method = method
        self.verify = verify
        self.settings = settings or EnumerationSettings()
        self.max_subsets = max_subsets
        self.run_config = run_config or {}
        self.report: Optional[AMTReport] = None
        self.suggestions = []
        self.validation_errors = []
        self.status = 'pending'
        self.error_message = None
        self.timestamp = datetime.now(timezone.utc).isoformat().replace('+00:00', 'Z')

    @property
    def resolved_method(self) -> str:
        if self.method == 'auto':
            return 'hamming' if self.code.scheme.classes == 1 and self.L in (None, ()) else 'general'
        return self.method

    def validate(self) -> Tuple[bool, str]:
        """
        Validate the job before anything is enumerated

        Returns:
            Tuple of (is_valid, error_message)
        """
        self.validation_errors = []
        code = self.code
        if self.method not in METHODS:
            self.validation_errors.append(f"Unknown method {self.method!r}; expected one of {', '.join(METHODS)}")
        if self.target is not None and not 1 <= self.target <= code.n:
            self.validation_errors.append(f"Target t must lie in 1..{code.n}")
        if self.base is not None:
            is_valid, message = validate_base_vertex(self.base, code.n, code.scheme.size)
            if not is_valid:
                self.validation_errors.append(message)
        for label, spec in (('K', self.K), ('L', self.L)):
            if isinstance(spec, str) and spec != AUTO:
                self.validation_errors.append(f"{label} must be a list of compositions or '{AUTO}'")
            elif spec and not isinstance(spec, str):
                for alpha in spec:
                    if alpha.n != code.n or alpha.classes != code.scheme.classes:
                        self.validation_errors.append(
                            f"{label} composition {alpha} does not fit length {code.n} with {code.scheme.classes} classes")
        if self.resolved_method == 'hamming':
            if code.scheme.classes != 1:
                self.validation_errors.append(f"The hamming method needs a 1-class scheme, {code.scheme.name} has {code.scheme.classes}")
            if self.L not in (None, ()):
                self.validation_errors.append("The hamming method takes no dual exclusion set")
        if self.L not in (None, ()) and not (code.scheme.is_translation and code.is_additive):
            self.validation_errors.append("A dual exclusion set needs an additive code over a translation scheme")

        if self.validation_errors:
            return False, "; ".join(self.validation_errors)
        return True, "Validation successful"

    def _resolve_exclusions(self) -> Tuple[FrozenSet[Composition], FrozenSet[Composition], Optional[int]]:
        if AUTO in (self.K, self.L):
            self.suggestions = suggest_exclusions(self.code, self.settings)
        bounds = []
        if self.K == AUTO:
            K, bound = apply_suggestions(self.suggestions, 'K')
            bounds.append(bound)
        else:
            K = frozenset(self.K or ())
        if self.L == AUTO:
            L, bound = apply_suggestions(self.suggestions, 'L')
            bounds.append(bound)
        else:
            L = frozenset(self.L or ())
        bounds = [b for b in bounds if b is not None]
        return K, L, (min(bounds) if bounds else None)

    def certify(self) -> Tuple[bool, str]:
        """
        Run the certification

        Returns:
            Tuple of (success, message); success means the computation finished
        """
        try:
            K, L, valid_up_to = self._resolve_exclusions()
            if self.resolved_method == 'hamming':
                self.report = hamming_certify(
                    self.code, [alpha.weight for alpha in K], settings=self.settings,
                    base=self.base, verify=self.verify,
                )
            else:
                inp = AMTInput(
                    code=self.code, base=self.base, K=K, L=L, target=self.target,
                    k_valid_up_to=valid_up_to, verify=self.verify, settings=self.settings,
                    max_subsets=self.max_subsets,
                )
                self.report = certify(inp)
            self.report.target = self.target
            self.report.run_config = self.run_config
            return True, f"certified t = {self.report.certified_t}"
        except (CertificationError, CodeError, EnumerationCapError, DesignError, InterpolationError) as e:
            error_msg = f"Certification failed: {e}"
            self.status = 'failed'
            self.error_message = error_msg
            logger.error(f"Certification job {self.job_id}: {error_msg}")
            return False, error_msg

    def execute(self) -> Tuple[bool, str]:
        """
        Execute the job: validate, certify, compare with the target

        Returns:
            Tuple of (success, message); a missed target is not a success
        """
        is_valid, validation_msg = self.validate()
        if not is_valid:
            self.status = 'failed'
            self.error_message = validation_msg
            logger.warning(f"Certification job validation failed: {validation_msg}")
            return False, validation_msg

        success, message = self.certify()
        if not success:
            return False, message

        report = self.report
        if not report.target_met:
            self.status = 'target_not_met'
            self.error_message = f"certified t = {report.certified_t} is below the target {self.target}"
            logger.warning(f"{self.code.name}: {self.error_message}")
            return False, self.error_message
        unverified = [c for c in report.classes if c.verified is False]
        if unverified:
            self.status = 'failed'
            self.error_message = f"{len(unverified)} classes failed exhaustive verification"
            logger.error(f"{self.code.name}: {self.error_message}")
            return False, self.error_message

        self.status = 'completed'
        logger.info(f"Certification job {self.job_id} completed: {self.code.name} t = {report.certified_t}")
        return True, message

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert the job to a dictionary for JSON output

        Returns:
            Dictionary representation of the job and its report
        """
        return {
            'job_id': self.job_id,
            'timestamp': self.timestamp,
            'code': self.code.name,
            'method': self.resolved_method,
            'status': self.status,
            'error_message': self.error_message,
            'validation_errors': self.validation_errors,
            'suggestions': [s.to_dict() for s in self.suggestions],
            'report': self.report.to_dict() if self.report else None,
        }


def create_certification_job(code: BlockCode, **kwargs: Any) -> CertificationJob:
    """
    Factory function to create a certification job

    Args:
        code: The code to certify
        **kwargs: CertificationJob keyword arguments

    Returns:
        CertificationJob instance
    """
    return CertificationJob(code, **kwargs)


def execute_certification_job(code: BlockCode, **kwargs: Any) -> Tuple[bool, str, Dict[str, Any]]:
    """
    Create and execute a certification job in one step

    Returns:
        Tuple of (success, message, job_dict)
    """
    job = create_certification_job(code, **kwargs)
    success, message = job.execute()
    return success, message, job.to_dict()
