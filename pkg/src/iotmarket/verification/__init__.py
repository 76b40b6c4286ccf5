# iotmarket/verification/__init__.py

from .audit_report import AuditReport
from .audits import audit, ic_audit, icfoc_audit, ir_audit, objective_cross_check, reciprocity_audit
from .mutations import MUTATIONS, apply_mutation
from .verification_exceptions import VerificationError

__all__ = [
    "AuditReport",
    "audit",
    "ic_audit",
    "ir_audit",
    "icfoc_audit",
    "reciprocity_audit",
    "objective_cross_check",
    "MUTATIONS",
    "apply_mutation",
    "VerificationError",
]
