from hypothesis import given
from hypothesis import strategies as st

from liaison.domain import (
    MAX_EMAIL_LEN,
    MAX_NAME_LEN,
    Credentials,
    RegistrationForm,
    Role,
    normalize_email,
    normalize_phone,
    opposite_role,
    validate_email,
    validate_registration,
)


def valid_form(**overrides):
    form = RegistrationForm(
        name="Acme Software",
        email="hr@acme.example.com",
        phone="+234 803-555-0199",
        password="hunter2hunter2",
        password_confirm="hunter2hunter2",
        role="C",
    )
    for key, value in overrides.items():
        setattr(form, key, value)
    return form


class TestNormalizeEmail:
    def test_trims_and_lowercases(self):
        assert normalize_email(" A@B.Com ") == "a@b.com"

    def test_identity(self):
        assert normalize_email("x@y.z") == "x@y.z"

    def test_empty_passthrough(self):
        assert normalize_email("") == ""

    @given(st.text(max_size=64))
    def test_idempotent(self, raw):
        assert normalize_email(normalize_email(raw)) == normalize_email(raw)


class TestValidateEmail:
    def test_valid(self):
        assert validate_email("dept@school.edu") is None

    def test_missing_at(self):
        assert validate_email("no-at-sign") == "format"

    def test_empty(self):
        assert validate_email("") == "empty"

    def test_too_long(self):
        assert validate_email("a@" + "b" * MAX_EMAIL_LEN + ".com") == "too_long"

    def test_dotless_domain(self):
        assert validate_email("a@localhost") == "format"

    def test_empty_local(self):
        assert validate_email("@b.com") == "format"

    def test_double_at(self):
        assert validate_email("a@@b.com") == "format"


class TestNormalizePhone:
    def test_strips_cosmetics(self):
        assert normalize_phone("+234 803-555-0199") == "2348035550199"

    def test_too_short(self):
        assert normalize_phone("123456") is None

    def test_too_long(self):
        assert normalize_phone("1" * 16) is None

    def test_letters(self):
        assert normalize_phone("080-CALL-ME") is None


class TestValidateRegistration:
    def test_well_formed(self):
        assert validate_registration(valid_form()) == []

    def test_password_mismatch(self):
        form = valid_form(password="abcdefgh", password_confirm="abcdefgX")
        assert validate_registration(form) == ["password_mismatch"]

    def test_role_other_than_school_or_company(self):
        assert validate_registration(valid_form(role="X")) == ["role_invalid"]

    def test_empty_name(self):
        assert validate_registration(valid_form(name="  ")) == ["name_empty"]

    def test_name_too_long(self):
        form = valid_form(name="x" * (MAX_NAME_LEN + 1))
        assert validate_registration(form) == ["name_too_long"]

    def test_short_password(self):
        form = valid_form(password="short", password_confirm="short")
        assert validate_registration(form) == ["password_too_short"]

    def test_email_too_long_distinct_code(self):
        form = valid_form(email="a@" + "b" * MAX_EMAIL_LEN + ".com")
        assert validate_registration(form) == ["email_too_long"]

    def test_collects_every_offending_field(self):
        form = RegistrationForm(name="", email="nope", phone="abc",
                                password="x", password_confirm="y", role="Q")
        assert validate_registration(form) == [
            "name_empty",
            "email_invalid",
            "phone_invalid",
            "password_too_short",
            "password_mismatch",
            "role_invalid",
        ]

    @given(
        name=st.text(min_size=1, max_size=MAX_NAME_LEN).filter(lambda s: s.strip()),
        local=st.text(alphabet="abcdefghijklmnopqrstuvwxyz0123456789._", min_size=1, max_size=30),
        domain=st.sampled_from(["example.com", "school.edu.ng", "acme.example"]),
        digits=st.text(alphabet="0123456789", min_size=7, max_size=15),
        password=st.text(min_size=8, max_size=40),
        role=st.sampled_from(["S", "C"]),
    )
    def test_clean_form_satisfies_account_invariants(
        self, name, local, domain, digits, password, role
    ):
        # A clean validation must leave nothing that an account constructor
        # could reject: the normalized fields all sit inside their bounds.
        form = RegistrationForm(
            name=name, email=f"{local}@{domain}", phone=digits,
            password=password, password_confirm=password, role=role,
        )
        assert validate_registration(form) == []
        normalized = normalize_email(form.email)
        assert validate_email(normalized) is None and len(normalized) <= MAX_EMAIL_LEN
        assert 1 <= len(form.name.strip()) <= MAX_NAME_LEN
        phone = normalize_phone(form.phone)
        assert phone is not None and 7 <= len(phone) <= 15
        assert Role(form.role) in (Role.SCHOOL, Role.COMPANY)


class TestRoles:
    def test_opposites(self):
        assert opposite_role(Role.SCHOOL) is Role.COMPANY
        assert opposite_role(Role.COMPANY) is Role.SCHOOL

    def test_involution(self):
        for role in Role:
            assert opposite_role(opposite_role(role)) is role

    def test_wire_values(self):
        assert Role.SCHOOL.value == "S" and Role.COMPANY.value == "C"


def test_credentials_repr_hides_password():
    creds = Credentials(email="a@b.com", password="super-secret")
    assert "super-secret" not in repr(creds)
    assert "super-secret" not in str([creds])
