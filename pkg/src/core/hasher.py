"""
FRANEL Hasher Module
SHA-256 digests guarding cached profiles against corruption
"""

import hashlib
from pathlib import Path


class FileHasher:
    """Chunked SHA-256 digests of cache payloads"""

    ALGORITHM = "sha256"
    DIGEST_LENGTH = 64

    def __init__(self, chunk_size: int = 8192):
        """
        Initialize the hasher

        Args:
            chunk_size: Bytes read per chunk
        """
        self.chunk_size = chunk_size

    def hash_file(self, file_path: Path) -> str:
        """
        Hex digest of a file

        Raises:
            FileNotFoundError: If the file doesn't exist
        """
        if not file_path.is_file():
            raise FileNotFoundError(f"File not found: {file_path}")

        hasher = hashlib.new(self.ALGORITHM)
        with open(file_path, 'rb') as f:
            while True:
                chunk = f.read(self.chunk_size)
                if not chunk:
                    break
                hasher.update(chunk)

        return hasher.hexdigest()

    def hash_bytes(self, data: bytes) -> str:
        """Hex digest of bytes"""
        return hashlib.new(self.ALGORITHM, data).hexdigest()

    @classmethod
    def is_valid_digest(cls, digest: str) -> bool:
        """A well-formed lowercase hex SHA-256 digest"""
        return (
            isinstance(digest, str)
            and len(digest) == cls.DIGEST_LENGTH
            and all(c in '0123456789abcdef' for c in digest)
        )

    def verify_file_integrity(self, file_path: Path, expected: str) -> bool:
        """
        Compare a file against a stored digest

        Returns:
            True if the digest matches, False otherwise (including unreadable files)
        """
        expected = expected.strip().lower()
        if not self.is_valid_digest(expected):
            return False
        try:
            return self.hash_file(file_path) == expected
        except OSError:
            return False

