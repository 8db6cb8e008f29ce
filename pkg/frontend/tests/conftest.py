from __future__ import annotations

import math
import struct
import wave
from pathlib import Path

import pytest


def write_wav(path: Path, seconds: float = 0.3, rate: int = 16000, channels: int = 1, freq: float = 440.0, amplitude: float = 0.4) -> Path:
    n = int(seconds * rate)
    with wave.open(str(path), "wb") as out:
        out.setnchannels(channels)
        out.setsampwidth(2)
        out.setframerate(rate)
        frames = bytearray()
        for i in range(n):
            value = int(amplitude * 32767 * math.sin(2 * math.pi * freq * i / rate))
            frames += struct.pack("<h", value) * channels
        out.writeframes(bytes(frames))
    return path


@pytest.fixture
def tone_wav(tmp_path):
    return write_wav(tmp_path / "tone.wav")


@pytest.fixture
def silence_wav(tmp_path):
    return write_wav(tmp_path / "silence.wav", amplitude=0.0)


@pytest.fixture
def empty_wav(tmp_path):
    path = tmp_path / "empty.wav"
    with wave.open(str(path), "wb") as out:
        out.setnchannels(1)
        out.setsampwidth(2)
        out.setframerate(16000)
    return path


@pytest.fixture
def stereo_44k_wav(tmp_path):
    return write_wav(tmp_path / "stereo.wav", rate=44100, channels=2)


@pytest.fixture
def garbage_wav(tmp_path):
    path = tmp_path / "garbage.wav"
    path.write_bytes(b"RIFFnot really audio")
    return path


@pytest.fixture
def stub_recognizer():
    """Deterministic fake: tone-bearing audio yields phones, silence yields none."""

    def run(wav_path: str) -> str:
        with wave.open(wav_path, "rb") as wav:
            frames = wav.readframes(wav.getnframes())
        peak = max(abs(s) for s in struct.unpack(f"<{len(frames) // 2}h", frames))
        return "  n a m  a s t eː " if peak > 100 else ""

    return run
