# 수치 계산 (스펙트럴 연산, 커널, solver, 진단) / run 오케스트레이션
