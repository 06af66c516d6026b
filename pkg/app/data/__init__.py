# 출력 저장소 / 그림
