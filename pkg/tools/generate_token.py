from fastmcp.server.auth.providers.bearer import RSAKeyPair

from shared.config import settings

# Generate a new key pair
key_pair = RSAKeyPair.generate()

# Generate a token for testing against JWT_ISSUER / JWT_AUDIENCE
token = key_pair.create_token(
    subject="rac1-dev",
    issuer=settings.jwt_issuer,
    audience=settings.jwt_audience,
    scopes=["drawings:read", "drawings:write"],
    expires_in_seconds=72000
)

print("JWT_PUBLIC_KEY:", key_pair.public_key)
print("Test token:", token)
