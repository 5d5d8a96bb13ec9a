from teachsim.teachers.policies import (
    POLICIES,
    AdaptiveTeacher,
    NonAdaptiveTeacher,
    NotSupported,
    Observation,
    PoolExhausted,
    RandomTeacher,
    RankingTeacher,
    Teacher,
)
from teachsim.teachers.bank import StudentModelBank
from teachsim.teachers.pool import ExamplePool
from teachsim.teachers.scoring import ProgramTeachingScorer, VerbTeachingScorer
